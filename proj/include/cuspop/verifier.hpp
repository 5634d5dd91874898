#pragma once

#include "cuspop/config.hpp"
#include "cuspop/maps.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace cuspop {

struct CoveringFamily {
    int j0 = 21, Nn = 0;
    std::vector<double> centers, radii;   // a_j = 1 - sigma^j, rho_j = sigma^j/4, j = j0..Nn
    static CoveringFamily make(int n, const SymbolParams& p);
};

// N_n = [log 2n / (theta log 1/sigma)] + 1 and m_j = [n sigma^{j theta}] + 1.
int covering_count(int n, double theta, double sigma = 7.0 / 8.0);
long long m_j(int n, int j, double theta, double sigma = 7.0 / 8.0);

struct Witness {
    nlohmann::ordered_json data;   // enough to replay the single failing evaluation
};

struct VerificationReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::size_t samples_tested = 0;
    std::size_t violation_count = 0;
    std::vector<Witness> violations;          // first few witnesses
    std::map<std::string, double> constants;  // sorted keys: stable output
    std::vector<std::string> notes;

    bool passed() const { return violation_count == 0; }
    void violate(nlohmann::ordered_json w);
    nlohmann::ordered_json to_json() const;
};

VerificationReport check_cusp_geometry(int sample_count, std::uint64_t seed, const SymbolParams& p);
VerificationReport check_calibration(const SymbolParams& p, int sample_count, std::uint64_t seed);
VerificationReport check_covering(int n, int sample_count, const SymbolParams& p, std::uint64_t seed);
VerificationReport check_derivative_bound(int trial_count, std::uint64_t seed);
VerificationReport check_schwarz_bound(int trial_count, std::uint64_t seed);
VerificationReport check_codim_count(const std::vector<int>& n_list, double theta);

std::vector<VerificationReport> run_all(const RunConfig& cfg);
std::vector<VerificationReport> run_all(const RunConfig& cfg, const SymbolParams& p);
nlohmann::ordered_json reports_to_json(const std::vector<VerificationReport>& reports, const RunConfig& cfg);

} // namespace cuspop
