#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace cuspop {

using cplx = std::complex<double>;

// A point of the closed unit disk.  Near the cusp z = 1 the value alone
// does not determine the chain to full relative accuracy, so the exact
// offset 1 - z travels with it; every constructor fills both.
template <class T>
class DiskPoint {
public:
    using C = std::complex<T>;

    static DiskPoint from_value(C z);
    static DiskPoint from_offset(C one_minus_z);
    // e^{it}; offset written as 2 sin^2(t/2) - i sin t (no cancellation at t ~ 0).
    static DiskPoint on_circle(T t);
    // (1 - deficit) e^{i angle}, deficit = 1 - r given exactly.
    static DiskPoint polar(T deficit, T angle);

    C value() const { return z_; }
    C offset() const { return one_minus_z_; }
    DiskPoint conj() const { return DiskPoint(std::conj(z_), std::conj(one_minus_z_)); }

private:
    DiskPoint(C z, C w) : z_(z), one_minus_z_(w) {}
    static void check(C z, C w);
    C z_, one_minus_z_;
};

using UnitDiskPoint = DiskPoint<double>;

template <class T>
struct CuspChainTrace {
    std::complex<T> z, chi0, chi1, chi2, chi3, chi;
    // 1 - |chi|, evaluated without cancellation.
    T one_minus_abs_chi;
};

enum class GKind { identity_in_z2, constant_one };

std::string to_string(GKind g);
GKind parse_gkind(const std::string& s);

struct SymbolParams {
    double theta = 0.5;
    double delta = 0.0;     // cos(pi theta / 2), set by make()
    double c = 0.0;
    double sigma = 7.0 / 8.0;
    int j0 = 21;
    double K_hat = 0.0;
    GKind g_kind = GKind::identity_in_z2;
    double eta = 0.0;       // calibration grid value behind c (0 when c was supplied)

    static SymbolParams make(double theta, double c, double K_hat,
                             GKind g = GKind::identity_in_z2, int j0 = 21);
    // Throws InvalidInput on any violated invariant; c = 0 is allowed only
    // when require_c is false (parameters awaiting calibration).
    void validate(bool require_c = true) const;
    std::uint64_t hash() const;
};

struct BidiskPoint {
    cplx w1, w2;
};

template <class T>
std::complex<T> chi0(const DiskPoint<T>& z);
template <class T>
CuspChainTrace<T> cusp(const DiskPoint<T>& z);
template <class T>
std::complex<T> phi_theta(const DiskPoint<T>& z, T theta);
// phi(chi(z)) = exp(-chi2^theta), using 1 - chi = 1/chi2 exactly.
template <class T>
std::complex<T> phi_of_chi(const CuspChainTrace<T>& tr, T theta);

inline cplx chi0(cplx z) { return chi0(UnitDiskPoint::from_value(z)); }
inline CuspChainTrace<double> cusp(cplx z) { return cusp(UnitDiskPoint::from_value(z)); }
inline cplx phi_theta(cplx z, double theta) { return phi_theta(UnitDiskPoint::from_value(z), theta); }

BidiskPoint symbol(const UnitDiskPoint& z1, const UnitDiskPoint& z2, const SymbolParams& p);
BidiskPoint diagonal_symbol(const UnitDiskPoint& z1);

// 1.05 x sup |1-chi|/(1-|chi|) over a sunflower sample capped at radius 1 - 1e-6.
double estimate_K(int sample_count);

struct CalibrationResult {
    double c = 0, eta = 0;
    double min_margin = 0;           // min of 1 - |chi| - 2c|phi(chi)|
    double min_relative_margin = 0;  // min of that margin over (1 - |chi|)
    std::size_t samples = 0;
};

// Largest grid value eta with 2 exp(-delta X^-theta) < X/K_hat for every grid X <= eta.
double calibration_eta(const SymbolParams& p);
CalibrationResult calibrate(const SymbolParams& p, int validation_count);
double calibrate_c(const SymbolParams& p, int validation_count);
// Checks |chi| + 2c|phi(chi)| < 1 on the clustered validation grid.
// Throws CalibrationFailure carrying the first offending point.
CalibrationResult validate_c(const SymbolParams& p, int validation_count);
// Default frozen parameters (theta = 1/2, K estimated from 1e5 samples, c calibrated).
SymbolParams default_params();

// Boundary-clustered validation grid: r = 1 - 2^{-k} crossed with uniform angles.
std::vector<UnitDiskPoint> clustered_grid(int count);

} // namespace cuspop
