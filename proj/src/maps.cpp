#include "cuspop/maps.hpp"

#include "cuspop/errors.hpp"
#include "cuspop/hash.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cuspop {

// ---------------------------------------------------------------- points

template <class T>
void DiskPoint<T>::check(C z, C w) {
    using std::isfinite;
    if (!isfinite(z.real()) || !isfinite(z.imag()) || !isfinite(w.real()) || !isfinite(w.imag()))
        throw InvalidInput("disk point: non-finite input");
    if (std::abs(z) > T(1) + T(1e-14))
        throw InvalidInput("disk point: modulus exceeds 1");
}

template <class T>
DiskPoint<T> DiskPoint<T>::from_value(C z) {
    C w = C(T(1)) - z;
    check(z, w);
    return DiskPoint(z, w);
}

template <class T>
DiskPoint<T> DiskPoint<T>::from_offset(C one_minus_z) {
    C z = C(T(1)) - one_minus_z;
    check(z, one_minus_z);
    return DiskPoint(z, one_minus_z);
}

template <class T>
DiskPoint<T> DiskPoint<T>::on_circle(T t) {
    if (!std::isfinite(t)) throw InvalidInput("disk point: non-finite angle");
    T s = std::sin(t / 2);
    C w(2 * s * s, -std::sin(t));
    C z(std::cos(t), std::sin(t));
    return DiskPoint(z, w);
}

template <class T>
DiskPoint<T> DiskPoint<T>::polar(T deficit, T angle) {
    if (!std::isfinite(deficit) || !std::isfinite(angle))
        throw InvalidInput("disk point: non-finite polar data");
    if (deficit < 0 || deficit > 1) throw InvalidInput("disk point: radius outside [0,1]");
    T r = 1 - deficit;
    T s = std::sin(angle / 2);
    // 1 - r e^{ia} = (1 - r) + r (1 - e^{ia})
    C w(deficit + r * 2 * s * s, -r * std::sin(angle));
    C z = std::polar(r, angle);
    return DiskPoint(z, w);
}

template class DiskPoint<double>;
template class DiskPoint<long double>;

// ---------------------------------------------------------------- chain

template <class T>
std::complex<T> chi0(const DiskPoint<T>& p) {
    using C = std::complex<T>;
    const C z = p.value(), d = p.offset();
    if (d == C(0)) return C(0);
    // evaluate on the closed upper half so that conjugation symmetry is exact
    if (z.imag() < 0) return std::conj(chi0(p.conj()));
    const C I(0, 1);
    const C zi = z + I;
    if (zi == C(0)) return I;   // z = -i: pole of the inner Mobius map
    // w = -i(z - i)/(z + i) = -1 - (1 - i)(1 - z)/(z + i), Im w >= 0 on the disk
    C w = C(-1) - C(1, -1) * d / zi;
    if (!(w.imag() > 0)) w = C(w.real(), T(0));
    const C s = std::sqrt(w);
    const C si = s + I;
    // Mobius-root-Mobius collapsed to (1+i)(z-1)/((z+i)(s+i)^2)
    const C r = C(1, 1) * (-d) / (zi * si * si);
    return z.imag() == 0 ? C(r.real(), T(0)) : r;   // real on the real axis
}

template <class T>
CuspChainTrace<T> cusp(const DiskPoint<T>& p) {
    using C = std::complex<T>;
    CuspChainTrace<T> tr;
    tr.z = p.value();
    if (p.offset() == C(0)) {
        const T inf = std::numeric_limits<T>::infinity();
        tr.chi0 = C(0);
        tr.chi1 = C(-inf, 0);
        tr.chi2 = C(inf, 0);
        tr.chi3 = C(0);
        tr.chi = C(1);
        tr.one_minus_abs_chi = 0;
        return tr;
    }
    tr.chi0 = chi0(p);
    tr.chi1 = std::log(tr.chi0);
    tr.chi2 = C(1) - (T(2) / std::numbers::pi_v<T>) * tr.chi1;
    tr.chi3 = C(1) / tr.chi2;
    tr.chi = C(1) - tr.chi3;
    // 1 - |1 - c3| = (2 Re c3 - |c3|^2)/(1 + |chi|)
    tr.one_minus_abs_chi = (2 * tr.chi3.real() - std::norm(tr.chi3)) / (1 + std::abs(tr.chi));
    return tr;
}

template <class T>
std::complex<T> phi_theta(const DiskPoint<T>& p, T theta) {
    using C = std::complex<T>;
    const C d = p.offset();
    if (d == C(0)) return C(0);
    return std::exp(-std::pow(d, C(-theta)));
}

template <class T>
std::complex<T> phi_of_chi(const CuspChainTrace<T>& tr, T theta) {
    using C = std::complex<T>;
    if (!std::isfinite(tr.chi2.real())) return C(0);
    return std::exp(-std::pow(tr.chi2, C(theta)));
}

template std::complex<double> chi0(const DiskPoint<double>&);
template std::complex<long double> chi0(const DiskPoint<long double>&);
template CuspChainTrace<double> cusp(const DiskPoint<double>&);
template CuspChainTrace<long double> cusp(const DiskPoint<long double>&);
template std::complex<double> phi_theta(const DiskPoint<double>&, double);
template std::complex<long double> phi_theta(const DiskPoint<long double>&, long double);
template std::complex<double> phi_of_chi(const CuspChainTrace<double>&, double);
template std::complex<long double> phi_of_chi(const CuspChainTrace<long double>&, long double);

// ---------------------------------------------------------------- params

std::string to_string(GKind g) {
    return g == GKind::identity_in_z2 ? "identity_in_z2" : "constant_one";
}

GKind parse_gkind(const std::string& s) {
    if (s == "identity_in_z2" || s == "identity") return GKind::identity_in_z2;
    if (s == "constant_one" || s == "one") return GKind::constant_one;
    throw InvalidInput("unknown g_kind '" + s + "'");
}

SymbolParams SymbolParams::make(double theta, double c, double K_hat, GKind g, int j0) {
    SymbolParams p;
    p.theta = theta;
    p.delta = std::cos(std::numbers::pi * theta / 2);
    p.c = c;
    p.K_hat = K_hat;
    p.g_kind = g;
    p.j0 = j0;
    return p;
}

void SymbolParams::validate(bool require_c) const {
    if (!(theta > 0 && theta < 1)) throw InvalidInput("theta must lie in (0,1)");
    if (delta != std::cos(std::numbers::pi * theta / 2)) throw InvalidInput("delta != cos(pi theta/2)");
    if (sigma != 7.0 / 8.0) throw InvalidInput("sigma is fixed at 7/8");
    if (j0 < 1 || 2 * std::pow(sigma, j0) > 0.125) throw InvalidInput("j0 violates 2 sigma^j0 <= 1/8");
    if (!(K_hat >= 1) || !std::isfinite(K_hat)) throw InvalidInput("K_hat must be finite and >= 1");
    if (require_c || c != 0)
        if (!(c > 0 && c < 1)) throw InvalidInput("c must lie in (0,1)");
}

std::uint64_t SymbolParams::hash() const {
    std::string s = "theta=" + fmt_double(theta) + ";c=" + fmt_double(c) + ";sigma=" + fmt_double(sigma) +
                    ";j0=" + std::to_string(j0) + ";K_hat=" + fmt_double(K_hat) + ";g=" + to_string(g_kind);
    return fnv1a(s);
}

// ---------------------------------------------------------------- symbols

BidiskPoint symbol(const UnitDiskPoint& z1, const UnitDiskPoint& z2, const SymbolParams& p) {
    const auto tr = cusp(z1);
    const cplx ph = phi_of_chi(tr, p.theta);
    const cplx g = p.g_kind == GKind::identity_in_z2 ? z2.value() : cplx(1);
    return {tr.chi, tr.chi + p.c * ph * g};
}

BidiskPoint diagonal_symbol(const UnitDiskPoint& z1) {
    const cplx x = cusp(z1).chi;
    return {x, x};
}

// ---------------------------------------------------------------- calibration

double estimate_K(int sample_count) {
    if (sample_count < 10000) throw InvalidInput("estimate_K: sample_count must be >= 1e4");
    const double golden = std::numbers::pi * (3 - std::sqrt(5.0));
    const double rmax = 1 - 1e-6;
    double sup = 0;
    bool any = false;
    auto take = [&](const UnitDiskPoint& z) {
        const auto tr = cusp(z);
        const double q = std::abs(tr.chi3) / tr.one_minus_abs_chi;
        if (std::isfinite(q)) {
            sup = std::max(sup, q);
            any = true;
        }
    };
    take(UnitDiskPoint::from_value(0));
    for (int k = 0; k < sample_count; ++k) {
        const double r = rmax * std::sqrt((k + 0.5) / sample_count);
        take(UnitDiskPoint::polar(1 - r, golden * k));
    }
    if (!any) throw EstimationFailure("estimate_K: every sampled ratio is non-finite");
    return std::max(1.0, 1.05 * sup);
}

std::vector<UnitDiskPoint> clustered_grid(int count) {
    if (count <= 0) throw InvalidInput("clustered_grid: count must be positive");
    const int levels = std::min(48, count);
    const int per = (count + levels - 1) / levels;
    const double golden = (std::sqrt(5.0) - 1) / 2;
    std::vector<UnitDiskPoint> out;
    out.reserve(static_cast<std::size_t>(levels) * per);
    for (int k = 1; k <= levels && static_cast<int>(out.size()) < count; ++k) {
        const double deficit = std::ldexp(1.0, -k);
        const double shift = std::fmod(golden * k, 1.0);
        for (int j = 0; j < per && static_cast<int>(out.size()) < count; ++j) {
            const double a = 2 * std::numbers::pi * ((j + shift) / per) - std::numbers::pi;
            out.push_back(UnitDiskPoint::polar(deficit, a));
        }
    }
    return out;
}

double calibration_eta(const SymbolParams& p) {
    p.validate(false);
    const double logK = std::log(p.K_hat), log2 = std::log(2.0);
    auto ok = [&](double X) { return log2 - p.delta * std::pow(X, -p.theta) < std::log(X) - logK; };
    // grid X_k = 2^{-k/16}, scanned from the bottom up
    const int kmax = 16 * 200;
    double eta = 0;
    for (int k = kmax; k >= 0; --k) {
        const double X = std::exp2(-k / 16.0);
        if (!ok(X)) break;
        eta = X;
    }
    if (eta == 0) throw CalibrationFailure("calibration: no admissible eta on the grid", 0, 0, 0);
    return eta;
}

CalibrationResult validate_c(const SymbolParams& p, int validation_count) {
    p.validate(true);
    CalibrationResult res;
    res.c = p.c;
    res.eta = p.eta;
    res.min_margin = std::numeric_limits<double>::infinity();
    res.min_relative_margin = std::numeric_limits<double>::infinity();
    for (const auto& z : clustered_grid(validation_count)) {
        const auto tr = cusp(z);
        const double bump = 2 * p.c * std::abs(phi_of_chi(tr, p.theta));
        const double margin = tr.one_minus_abs_chi - bump;
        if (!(margin > 0))
            throw CalibrationFailure("calibration: |chi| + 2c|phi(chi)| >= 1", z.value().real(),
                                     z.value().imag(), margin);
        res.min_margin = std::min(res.min_margin, margin);
        res.min_relative_margin = std::min(res.min_relative_margin, margin / tr.one_minus_abs_chi);
        ++res.samples;
    }
    return res;
}

CalibrationResult calibrate(const SymbolParams& p0, int validation_count) {
    SymbolParams p = p0;
    p.eta = calibration_eta(p0);
    p.c = std::min(p.eta / (4 * p.K_hat), 1 - 1e-12);
    auto res = validate_c(p, validation_count);
    res.eta = p.eta;
    return res;
}

double calibrate_c(const SymbolParams& p, int validation_count) {
    return calibrate(p, validation_count).c;
}

SymbolParams default_params() {
    static const SymbolParams cached = [] {
        SymbolParams p = SymbolParams::make(0.5, 0.0, estimate_K(100000));
        const auto res = calibrate(p, 100000);
        p.c = res.c;
        p.eta = res.eta;
        return p;
    }();
    return cached;
}

} // namespace cuspop
