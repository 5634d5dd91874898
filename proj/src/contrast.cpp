#include "cuspop/contrast.hpp"

#include "cuspop/errors.hpp"
#include "mp_eigen.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cuspop {

Eigen::MatrixXcd assemble_one_dim(const DiskSymbol& s, int degree, int Q) {
    TruncationSpec{degree, Q}.validate();
    const auto rule = uniform_rule(Q, GridPlacement::midpoint);
    std::vector<cplx> f(Q), p(Q, 1.0), out(Q);
    for (int j = 0; j < Q; ++j) f[j] = s.eval(rule.pts[j]);
    auto* in = reinterpret_cast<fftw_complex*>(p.data());
    auto* ou = reinterpret_cast<fftw_complex*>(out.data());
    // out-of-place complex transforms leave the input intact
    fftw_plan plan = fftw_plan_dft_1d(Q, in, ou, FFTW_FORWARD, FFTW_ESTIMATE);
    Eigen::MatrixXcd M(degree + 1, degree + 1);
    for (int m = 0; m <= degree; ++m) {
        if (m > 0)
            for (int j = 0; j < Q; ++j) p[j] *= f[j];
        fftw_execute(plan);
        for (int b = 0; b <= degree; ++b) M(b, m) = std::polar(1.0 / Q, -std::numbers::pi * b / Q) * out[b];
    }
    fftw_destroy_plan(plan);
    return M;
}

SingularSpectrum one_dim_contrast(const TruncationSpec& spec, const DiskSymbol& s) {
    spec.validate();
    const auto M = assemble_one_dim(s, spec.max_degree, spec.quad_points);
    const auto rule = uniform_rule(spec.quad_points, GridPlacement::midpoint);
    double hs2 = 0;
    for (std::size_t j = 0; j < rule.size(); ++j) hs2 += rule.w[j] / (1 - std::norm(s.eval(rule.pts[j])));
    const double r = hs2 - M.squaredNorm();
    if (r < -1e-10) throw Inconsistency("one_dim_contrast: negative tail radicand");
    auto sp = singular_values(M, std::sqrt(std::max(0.0, r)));
    sp.source = "one_dim_fft";
    return sp;
}

SingularSpectrum one_dim_contrast_graded(int degree, const GradedMesh& mesh, const DiskSymbol& s) {
    if (degree < 0) throw ConfigError("degree must be >= 0");
    const auto rule = graded_rule(mesh);
    const Eigen::Index N = static_cast<Eigen::Index>(rule.size());
    Eigen::MatrixXcd U(N, degree + 1);
    double tail2 = 0;
    for (Eigen::Index j = 0; j < N; ++j) {
        const cplx x = s.eval(rule.pts[j]);
        cplx p = std::sqrt(rule.w[j]);
        for (int m = 0; m <= degree; ++m, p *= x) U(j, m) = p;
        const double a2 = std::norm(x);
        tail2 += rule.w[j] * std::pow(a2, degree + 1) / (1 - a2);
    }
    auto sp = singular_values(U, std::sqrt(tail2));
    sp.source = "one_dim_graded";
    return sp;
}

namespace {

using Series = std::vector<mpreal>;

Series mul(const Series& a, const Series& b, std::size_t n) {
    Series c(n, mpreal(0));
    for (std::size_t i = 0; i < n && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < n && j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

Series reciprocal(const Series& a, std::size_t n) {
    Series b(n, mpreal(0));
    b[0] = 1 / a[0];
    for (std::size_t k = 1; k < n; ++k) {
        mpreal s = 0;
        for (std::size_t i = 1; i <= k && i < a.size(); ++i) s += a[i] * b[k - i];
        b[k] = -s * b[0];
    }
    return b;
}

// chi = 1 - 1/(1 - (2/pi) log chi0) with
//   (log chi0)' = -sqrt2 / ((1 - z) sqrt(1 + z^2)),  log chi0(0) = log(sqrt2 - 1).
Series cusp_series(std::size_t n) {
    const mpreal sqrt2 = mp::sqrt(mpreal(2));
    const mpreal pi = boost::math::constants::pi<mpreal>();
    Series isq(n, mpreal(0));   // (1 + z^2)^{-1/2}
    mpreal c = 1;
    for (std::size_t k = 0; 2 * k < n; ++k) {
        isq[2 * k] = c;
        c *= -(mpreal(2 * k + 1) / mpreal(2 * k + 2));
    }
    Series d(n, mpreal(0));     // isq / (1 - z): prefix sums
    mpreal acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += isq[i];
        d[i] = -sqrt2 * acc;
    }
    Series chi2(n, mpreal(0));
    chi2[0] = 1 - 2 / pi * mp::log(sqrt2 - 1);
    for (std::size_t b = 1; b < n; ++b) chi2[b] = -2 / pi * d[b - 1] / mpreal(b);
    Series chi3 = reciprocal(chi2, n);
    Series chi(n);
    for (std::size_t b = 0; b < n; ++b) chi[b] = -chi3[b];
    chi[0] += 1;
    return chi;
}

} // namespace

std::vector<double> cusp_taylor_coefficients(int count) {
    if (count < 1) throw InvalidInput("count must be >= 1");
    const auto s = cusp_series(static_cast<std::size_t>(count));
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = static_cast<double>(s[i]);
    return out;
}

SingularSpectrum shrunk_contrast_taylor(double r, int degree, int rows) {
    if (!(r > 0 && r < 1)) throw InvalidInput("shrink radius must lie in (0,1)");
    if (degree < 0 || rows < 1) throw ConfigError("degree >= 0 and rows >= 1 required");
    const std::size_t B = static_cast<std::size_t>(rows) + 1;
    const Series chi = cusp_series(B);
    std::vector<mpreal> rp(B);
    rp[0] = 1;
    for (std::size_t b = 1; b < B; ++b) rp[b] = rp[b - 1] * mpreal(r);

    using MpMat = Eigen::Matrix<mpreal, Eigen::Dynamic, Eigen::Dynamic>;
    MpMat M(static_cast<Eigen::Index>(B), degree + 1);
    Series pw(B, mpreal(0));
    pw[0] = 1;
    for (int m = 0; m <= degree; ++m) {
        if (m > 0) pw = mul(pw, chi, B);
        for (std::size_t b = 0; b < B; ++b) M(static_cast<Eigen::Index>(b), m) = rp[b] * pw[b];
    }
    // the smaller Gram side
    MpMat K = M.rows() <= M.cols() ? MpMat(M * M.transpose()) : MpMat(M.transpose() * M);
    Eigen::SelfAdjointEigenSolver<MpMat> es(K, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ComputationError("shrunk_contrast_taylor: eigensolver failed");

    SingularSpectrum sp;
    sp.source = "one_dim_taylor";
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const mpreal ev = es.eigenvalues()[i];
        sp.values.push_back(ev > 0 ? static_cast<double>(mp::sqrt(ev)) : 0.0);
    }
    std::sort(sp.values.begin(), sp.values.end(), std::greater<>());

    // discarded rows: |[z^b] chi^m| <= 1, so HS^2 <= (degree+1) r^{2B}/(1 - r^2)
    const double rows_tail = std::sqrt((degree + 1) * std::pow(r, 2.0 * B) / (1 - r * r));
    // discarded columns: ||chi_r^m|| <= rho^m with rho = max |chi| on |z| = r
    double rho = 0;
    for (int j = 0; j < 4096; ++j)
        rho = std::max(rho, std::abs(cusp(UnitDiskPoint::polar(1 - r, 2 * std::numbers::pi * (j + 0.5) / 4096)).chi));
    rho = std::min(1.0, rho * (1 + 1e-6));
    const double cols_tail = std::pow(rho, degree + 1) / std::sqrt(1 - rho * rho);
    sp.tail_bound = rows_tail + cols_tail;
    return sp;
}

} // namespace cuspop
