#pragma once

#include "cuspop/hardy.hpp"

#include <Eigen/Dense>

#include <string>
#include <utility>
#include <vector>

namespace cuspop {

// a_n = values[n-1]; a_1 is the norm.
struct SingularSpectrum {
    std::vector<double> values;
    double tail_bound = 0;
    std::string source;
    std::size_t size() const { return values.size(); }
};

struct Interval {
    double lower = 0, upper = 0;
};

struct DecayFit {
    double logC = 0, tau = 0, r_squared = 0;
    int N = 2;
    int n_lo = 0, n_hi = 0;       // span of the usable points
    std::vector<int> used;        // usable n
};

struct BetaReport {
    int N = 2;
    double beta_minus = 0, beta_plus = 0;
    double beta_plus_upper = 0;   // same maximum taken over the interval upper endpoints
    int n_lo = 0, n_hi = 0;       // the upper half actually scanned
};

struct SplitSpec {
    int n = 0;
    double lambda = 0, r_n = 0;
    double one_minus_lambda = 0;  // sigma^j0 / (2 K_hat), kept exactly
    static SplitSpec make(int n, const SymbolParams& p);
    void validate() const;
};

struct SplitGram {
    Eigen::MatrixXcd G1, G2, G3, full;
    double mass1 = 0, mass2 = 0, mass3 = 0;
};

SingularSpectrum singular_values(const Eigen::MatrixXcd& m, double tail = 0);
SingularSpectrum singular_values(const OperatorMatrix& m);
// Square roots of the eigenvalues of a Hermitian positive semidefinite Gram matrix.
SingularSpectrum gram_spectrum(const Eigen::MatrixXcd& gram, double tail = 0);
SingularSpectrum singular_values(const GramMatrix& g);

Interval approximation_numbers(const SingularSpectrum& s, int n);
BetaReport beta_estimate(const SingularSpectrum& s, int N, std::pair<int, int> n_range);
DecayFit fit_decay(const SingularSpectrum& s, int N, std::pair<int, int> n_range);

// Gram matrices of m_Phi restricted to the closed lambda-bidisk, the shell up
// to r_n and the outer part, on the product of t1_rule with a Q2-point uniform
// t2 grid.  Accumulated in long double so the partition identity holds to
// rounding.  With outer_only, G1, G2 and full are left empty.
SplitGram split_gram(const SkewSymbol& s, int D, const SplitSpec& split, const BoundaryRule& t1_rule, int Q2,
                     bool outer_only = false);
SplitGram split_gram(const SymbolParams& p, const TruncationSpec& spec, const SplitSpec& split);
// t1 rule used by split_gram: deep grading so the outer region is resolved for n up to a few hundred.
GradedMesh split_mesh();

// Block-diagonal direct sum.
Eigen::MatrixXcd direct_sum(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

} // namespace cuspop
