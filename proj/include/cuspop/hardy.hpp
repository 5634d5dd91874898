#pragma once

#include "cuspop/maps.hpp"
#include "cuspop/quadrature.hpp"
#include "cuspop/symbols.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace cuspop {

struct MonomialIndex {
    int alpha1 = 0, alpha2 = 0;
    friend bool operator==(const MonomialIndex&, const MonomialIndex&) = default;
};

// All (a1, a2) with max(a1, a2) <= D, ordered by max-degree block and
// lexicographically inside a block, so degree d < D is a leading block.
class IndexSet {
public:
    explicit IndexSet(int D);
    int degree() const { return D_; }
    int size() const { return (D_ + 1) * (D_ + 1); }
    MonomialIndex at(int i) const;
    int index_of(MonomialIndex a) const;

private:
    int D_;
};

struct TruncationSpec {
    int max_degree = 48;
    int quad_points = 1024;
    void validate() const;  // Q power of two, Q >= 4(D+1)
};

struct PullbackSamples {
    std::vector<std::pair<double, double>> nodes;
    std::vector<BidiskPoint> values;
    std::vector<double> weights;
};

struct OperatorMatrix {
    int D = 0, Q = 0;
    Eigen::MatrixXcd entries;   // (beta, alpha) in IndexSet order
    double tail_hs = 0;         // +inf when the symbol is not Hilbert-Schmidt
    std::uint64_t params_hash = 0;
    std::string symbol_name;
};

// Gram matrix of the columns Phi^alpha in L^2(m_Phi), i.e. (C P)^*(C P).
struct GramMatrix {
    int D = 0;
    Eigen::MatrixXcd entries;
    double tail_hs = 0;   // ||C (I - P)||_HS on the same rule
    double hs2 = 0;       // ||C||_HS^2 on the same rule
};

struct CarlesonWindow {
    cplx xi;
    double h;
    CarlesonWindow(cplx xi, double h);
    bool contains(cplx z) const { return std::abs(z - xi) <= h; }
};

cplx reproducing_kernel(const BidiskPoint& a, const BidiskPoint& z);
double evaluation_bound(const BidiskPoint& a);

// Q x Q grid, values Phi(e^{it1}, e^{it2}).  The nodal placement contains t = (0,0).
PullbackSamples boundary_samples(const SymbolParams& p, const TruncationSpec& spec,
                                 GridPlacement placement = GridPlacement::nodal);
PullbackSamples boundary_samples(const SymbolParams& p, int Q1, int Q2, GridPlacement placement);

// Matrix of C_Phi on span{e_alpha : max alpha <= D} via one-dimensional FFTs on
// the half-cell-shifted grid (closed-form t2 reduction).  tail_hs from
// matrix_truncation_error, or +inf for a non-Hilbert-Schmidt symbol.
OperatorMatrix assemble_matrix(const SkewSymbol& s, const TruncationSpec& spec);
OperatorMatrix assemble_matrix(const SymbolParams& p, const TruncationSpec& spec);

// Per-node integrand of ||C||_HS^2 after the exact t2 integration.
double hs_density(const SkewSample& v);
double hs_norm_squared(const SkewSymbol& s, const BoundaryRule& rule);

struct HsEstimate {
    double value = 0;          // at Q
    double value_doubled = 0;  // at 2Q
    double relative_change = 0;
    bool converged = false;    // relative change <= 5%
};
HsEstimate hs_norm_squared(const SkewSymbol& s, const TruncationSpec& spec);
HsEstimate hs_norm_squared(const SymbolParams& p, const TruncationSpec& spec);

// sqrt(HS^2 - ||matrix||_F^2) on the matrix's own rule; DomainError for non-HS symbols.
double matrix_truncation_error(const SkewSymbol& s, const TruncationSpec& spec, const OperatorMatrix& m);
double matrix_truncation_error(const SkewSymbol& s, const TruncationSpec& spec);
double matrix_truncation_error(const SymbolParams& p, const TruncationSpec& spec);

// ||C (I - P_D)||_HS on an arbitrary rule (discarded columns only).
double column_tail_hs(const SkewSymbol& s, int D, const BoundaryRule& rule);
GramMatrix assemble_gram(const SkewSymbol& s, int D, const BoundaryRule& rule);

struct WindowIntegral {
    double value = 0;
    double t_h = 0;      // the window is {|t| <= t_h}
    bool empty = false;  // h below the resolvable scale
};

// I0(h) = int_{|chi(e^it) - 1| <= h} dt / (1 - |chi|)^2, raw dt.
template <class T = double>
WindowIntegral window_integral_I0(double h, const GradedMesh& mesh = {});
// I(h) with the normalized measure on the torus; t2 by the Q-point trapezoid rule.
template <class T = double>
WindowIntegral window_integral_I(double h, const SymbolParams& p, const TruncationSpec& spec,
                                 const GradedMesh& mesh = {});

} // namespace cuspop
