#pragma once

#include <stdexcept>
#include <string>

namespace cuspop {

// All library failures derive from Error so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct RangeError : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };
struct Inconsistency : Error { using Error::Error; };
struct ComputationError : Error { using Error::Error; };
struct EstimationFailure : Error { using Error::Error; };

// Calibration refused: carries the offending sample so it can be reported.
struct CalibrationFailure : Error {
    CalibrationFailure(const std::string& what, double z_re, double z_im, double value);
    double witness_re, witness_im, witness_value;
};

} // namespace cuspop
