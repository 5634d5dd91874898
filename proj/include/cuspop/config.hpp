#pragma once

#include "cuspop/hardy.hpp"
#include "cuspop/maps.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cuspop {

enum class Precision { double_, extended };

// Flat "key = value" run configuration; '#' starts a comment.
struct RunConfig {
    // symbol
    double theta = 0.5;
    GKind g_kind = GKind::identity_in_z2;
    double c = 0;        // 0: calibrate
    double K_hat = 0;    // 0: estimate
    int j0 = 21;
    // truncation
    int degree = 48;
    int quad = 1024;
    // experiments
    std::string symbol = "paper";     // paper | diagonal | one-dim | scaled:r
    std::string route = "gram";       // gram | fft
    int one_dim_degree = 512;
    int seed = 20240917;
    std::string out_dir = "out";
    Precision precision = Precision::double_;
    // sample counts
    int k_samples = 100000;
    int calibration_validation = 100000;
    int geometry_samples = 100000;
    int calibration_samples = 1000000;
    int covering_samples = 100000;
    int derivative_trials = 1000;
    int schwarz_trials = 1000;
    std::vector<int> covering_n = {10, 100, 1000};
    std::vector<int> codim_n = {10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};

    static RunConfig parse(const std::string& text);   // ConfigError with the line number
    static RunConfig load(const std::string& path);
    void set(const std::string& key, const std::string& value);  // ConfigError on unknown keys
    void validate() const;
    std::string serialize() const;   // canonical, one key per line
    std::uint64_t hash() const;
    TruncationSpec truncation() const { return {degree, quad}; }
};

// K_hat/c from the config when given, otherwise estimated and calibrated.
SymbolParams resolve_params(const RunConfig& cfg);

// Writes/reads the frozen parameter file produced by `calibrate`.
std::string serialize_params(const SymbolParams& p, const CalibrationResult* cal = nullptr);
SymbolParams parse_params(const std::string& text);

} // namespace cuspop
