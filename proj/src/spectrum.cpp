#include "cuspop/spectrum.hpp"

#include "cuspop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cuspop {

SingularSpectrum singular_values(const Eigen::MatrixXcd& m, double tail) {
    if (!m.allFinite()) throw InvalidInput("singular_values: non-finite entries");
    SingularSpectrum s;
    s.tail_bound = tail;
    s.source = "svd";
    if (m.size() == 0) return s;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    if (svd.info() != Eigen::Success) throw ComputationError("singular_values: SVD did not converge");
    const auto& v = svd.singularValues();
    s.values.assign(v.data(), v.data() + v.size());
    std::sort(s.values.begin(), s.values.end(), std::greater<>());
    return s;
}

SingularSpectrum singular_values(const OperatorMatrix& m) {
    return singular_values(m.entries, m.tail_hs);
}

SingularSpectrum gram_spectrum(const Eigen::MatrixXcd& gram, double tail) {
    if (!gram.allFinite()) throw InvalidInput("gram_spectrum: non-finite entries");
    SingularSpectrum s;
    s.tail_bound = tail;
    s.source = "gram";
    if (gram.size() == 0) return s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw ComputationError("gram_spectrum: eigensolver did not converge");
    const auto& ev = es.eigenvalues();
    s.values.resize(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) s.values[i] = std::sqrt(std::max(0.0, ev[i]));
    std::sort(s.values.begin(), s.values.end(), std::greater<>());
    return s;
}

SingularSpectrum singular_values(const GramMatrix& g) {
    return gram_spectrum(g.entries, g.tail_hs);
}

Interval approximation_numbers(const SingularSpectrum& s, int n) {
    if (n < 1) throw IndexError("approximation number index must be >= 1");
    if (static_cast<std::size_t>(n) > s.values.size()) throw IndexError("approximation number index exceeds spectrum");
    const double v = s.values[n - 1];
    return {v, v + s.tail_bound};
}

namespace {

std::size_t ipow(int n, int N) {
    std::size_t r = 1;
    for (int i = 0; i < N; ++i) r *= static_cast<std::size_t>(n);
    return r;
}

} // namespace

BetaReport beta_estimate(const SingularSpectrum& s, int N, std::pair<int, int> n_range) {
    if (N < 1) throw InvalidInput("beta_estimate: N must be >= 1");
    auto [lo, hi] = n_range;
    if (lo < 1) lo = 1;
    while (hi >= lo && ipow(hi, N) > s.values.size()) --hi;
    if (hi < lo) throw RangeError("beta_estimate: empty admissible range");
    const int start = lo + (hi - lo) / 2;
    BetaReport b;
    b.N = N;
    b.n_lo = start;
    b.n_hi = hi;
    b.beta_minus = std::numeric_limits<double>::infinity();
    b.beta_plus = 0;
    for (int n = start; n <= hi; ++n) {
        const auto iv = approximation_numbers(s, static_cast<int>(ipow(n, N)));
        const double x = std::pow(iv.lower, 1.0 / n);
        b.beta_minus = std::min(b.beta_minus, x);
        b.beta_plus = std::max(b.beta_plus, x);
        b.beta_plus_upper = std::max(b.beta_plus_upper, std::pow(iv.upper, 1.0 / n));
    }
    // finite-n proxies of quantities that live in [0,1]
    b.beta_minus = std::clamp(b.beta_minus, 0.0, 1.0);
    b.beta_plus = std::clamp(b.beta_plus, 0.0, 1.0);
    b.beta_plus_upper = std::clamp(b.beta_plus_upper, 0.0, 1.0);
    return b;
}

DecayFit fit_decay(const SingularSpectrum& s, int N, std::pair<int, int> n_range) {
    if (N < 1) throw InvalidInput("fit_decay: N must be >= 1");
    DecayFit f;
    f.N = N;
    std::vector<double> x, y;
    for (int n = std::max(1, n_range.first); n <= n_range.second; ++n) {
        const std::size_t m = ipow(n, N);
        if (m > s.values.size()) break;
        const double a = s.values[m - 1];
        if (!(a > 10 * s.tail_bound) || !(a > 0)) continue;
        f.used.push_back(n);
        x.push_back(n);
        y.push_back(std::log(a));
    }
    if (x.size() < 4)
        throw InsufficientData("fit_decay: " + std::to_string(x.size()) +
                               " usable points above 10 x tail bound (need 4)");
    const double k = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= k;
    my /= k;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    const double slope = sxy / sxx;
    f.tau = -slope;
    f.logC = my - slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.logC + slope * x[i]);
        ssr += r * r;
    }
    f.r_squared = syy > 0 ? std::clamp(1 - ssr / syy, 0.0, 1.0) : 1.0;
    f.n_lo = f.used.front();
    f.n_hi = f.used.back();
    return f;
}

SplitSpec SplitSpec::make(int n, const SymbolParams& p) {
    SplitSpec s;
    s.n = n;
    s.one_minus_lambda = std::pow(p.sigma, p.j0) / (2 * p.K_hat);
    s.lambda = 1 - s.one_minus_lambda;
    s.r_n = n > 0 ? 1 - 1.0 / n : 0;
    s.validate();
    return s;
}

void SplitSpec::validate() const {
    if (n < 1) throw InvalidInput("split: n must be >= 1");
    if (!(lambda > 0 && lambda < r_n && r_n < 1))
        throw InvalidInput("split: need 0 < lambda < r_n < 1 (n too small for this lambda)");
}

GradedMesh split_mesh() {
    GradedMesh m;
    m.levels = 500;
    m.corner_levels = 30;
    m.order = 16;
    return m;
}

SplitGram split_gram(const SkewSymbol& s, int D, const SplitSpec& split, const BoundaryRule& t1_rule, int Q2,
                     bool outer_only) {
    split.validate();
    if (D < 0) throw ConfigError("split: degree must be >= 0");
    if (Q2 < 2 * D + 1) throw ConfigError("split: Q2 must exceed 2D for an exact t2 rule");
    using LC = std::complex<long double>;
    using LM = Eigen::Matrix<LC, Eigen::Dynamic, Eigen::Dynamic>;
    const IndexSet idx(D);
    const int n = idx.size();
    LM A[3], F;
    for (auto& a : A) a = LM::Zero(n, n);
    if (!outer_only) F = LM::Zero(n, n);
    long double mass[3] = {0, 0, 0};

    std::vector<cplx> u(Q2);
    for (int l = 0; l < Q2; ++l) u[l] = std::polar(1.0, 2 * std::numbers::pi * l / Q2);
    const double inner_def = split.one_minus_lambda, outer_def = 1.0 / split.n;

    std::vector<LC> p1(D + 1), p2(D + 1), vec(n);
    for (std::size_t j = 0; j < t1_rule.size(); ++j) {
        const SkewSample v = s.eval(t1_rule.pts[j]);
        const double d1 = v.om_F2 / (1 + std::abs(v.F));
        // |w2| <= |F| + |H| when G = F, so such nodes cannot reach the outer part
        if (outer_only && s.base == SecondBase::equals_first && d1 > outer_def + 2 * std::abs(v.H)) continue;
        const long double wj = static_cast<long double>(t1_rule.w[j]) / Q2;
        for (int l = 0; l < Q2; ++l) {
            const cplx hu = v.H * u[l];
            const cplx w2 = v.G + hu;
            const double d2 = (v.om_G2 - 2 * std::real(std::conj(v.G) * hu) - std::norm(hu)) / (1 + std::abs(w2));
            const double d = std::min(d1, d2);
            // closed lambda-bidisk, half-open shell, outer part
            const int r = d >= inner_def ? 0 : (d > outer_def ? 1 : 2);
            if (outer_only && r != 2) continue;
            p1[0] = p2[0] = 1;
            for (int a = 1; a <= D; ++a) {
                p1[a] = p1[a - 1] * LC(v.F);
                p2[a] = p2[a - 1] * LC(w2);
            }
            for (int i = 0; i < n; ++i) {
                const auto al = idx.at(i);
                vec[i] = p1[al.alpha1] * p2[al.alpha2];
            }
            mass[r] += wj;
            for (int i = 0; i < n; ++i) {
                const LC ci = std::conj(vec[i]) * wj;
                for (int k = 0; k < n; ++k) {
                    const LC c = ci * vec[k];
                    A[r](i, k) += c;
                    if (!outer_only) F(i, k) += c;
                }
            }
        }
    }
    SplitGram g;
    g.G3 = A[2].cast<cplx>();
    g.mass3 = static_cast<double>(mass[2]);
    if (!outer_only) {
        g.G1 = A[0].cast<cplx>();
        g.G2 = A[1].cast<cplx>();
        g.full = F.cast<cplx>();
        g.mass1 = static_cast<double>(mass[0]);
        g.mass2 = static_cast<double>(mass[1]);
    }
    return g;
}

SplitGram split_gram(const SymbolParams& p, const TruncationSpec& spec, const SplitSpec& split) {
    spec.validate();
    return split_gram(paper_symbol(p), spec.max_degree, split, graded_rule(split_mesh()), spec.quad_points);
}

Eigen::MatrixXcd direct_sum(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
}

} // namespace cuspop
