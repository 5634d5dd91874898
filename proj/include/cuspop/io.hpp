#pragma once

#include "cuspop/config.hpp"
#include "cuspop/hardy.hpp"
#include "cuspop/spectrum.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>

namespace cuspop {

// Binary layout (little endian), see docs/FORMATS.md:
//   "CSPOPMAT" | u32 version | i32 D | i32 Q | u64 params_hash | i64 rows | i64 cols
//   | f64 tail_hs | rows*cols*(f64 re, f64 im) row-major
void write_matrix_binary(std::ostream& os, const OperatorMatrix& m);
OperatorMatrix read_matrix_binary(std::istream& is);
// CSV: '#' header lines carry D, Q, params_hash, tail_hs; then row,col,re,im.
void write_matrix_csv(std::ostream& os, const OperatorMatrix& m);

// n, index, a_lower, a_upper with index = n^N.
void write_spectrum_csv(std::ostream& os, const SingularSpectrum& s, int N, const RunConfig& cfg);
// a_n^{1/n} trend table for one-variable runs.
void write_trend_csv(std::ostream& os, const SingularSpectrum& s, const RunConfig& cfg);

nlohmann::ordered_json spectrum_json(const SingularSpectrum& s, const std::optional<DecayFit>& fit,
                                     const std::optional<BetaReport>& beta, const std::string& fit_error,
                                     const RunConfig& cfg);

// Writes `text` to out_dir/name, creating out_dir.
std::string write_text_file(const std::string& out_dir, const std::string& name, const std::string& text);

} // namespace cuspop
