#include "cuspop/errors.hpp"

namespace cuspop {

CalibrationFailure::CalibrationFailure(const std::string& what, double z_re, double z_im, double value)
    : Error(what), witness_re(z_re), witness_im(z_im), witness_value(value) {}

} // namespace cuspop
