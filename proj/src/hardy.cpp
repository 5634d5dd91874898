#include "cuspop/hardy.hpp"

#include "cuspop/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace cuspop {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::vector<double>> pascal(int n) {
    std::vector<std::vector<double>> b(n + 1);
    for (int i = 0; i <= n; ++i) {
        b[i].assign(i + 1, 1.0);
        for (int k = 1; k < i; ++k) b[i][k] = b[i - 1][k - 1] + b[i - 1][k];
    }
    return b;
}

// RAII wrapper around one FFTW forward plan.
class Fft {
public:
    explicit Fft(int n) : n_(n) {
        in_ = fftw_alloc_complex(n);
        out_ = fftw_alloc_complex(n);
        plan_ = fftw_plan_dft_1d(n, in_, out_, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~Fft() {
        fftw_destroy_plan(plan_);
        fftw_free(in_);
        fftw_free(out_);
    }
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    cplx* in() { return reinterpret_cast<cplx*>(in_); }
    const cplx* out() const { return reinterpret_cast<const cplx*>(out_); }
    void run() { fftw_execute(plan_); }

private:
    int n_;
    fftw_complex *in_, *out_;
    fftw_plan plan_;
};

std::vector<SkewSample> sample(const SkewSymbol& s, const BoundaryRule& rule) {
    std::vector<SkewSample> v;
    v.reserve(rule.size());
    for (const auto& z : rule.pts) v.push_back(s.eval(z));
    return v;
}

// Per-node mass of the retained block sum_{max alpha <= D} avg_t2 |Phi^alpha|^2.
double box_density(const SkewSample& v, int D, const std::vector<std::vector<double>>& binom) {
    const double f2 = std::norm(v.F), g2 = std::norm(v.G), h2 = std::norm(v.H);
    double p1;
    if (v.om_F2 > 1e-3) p1 = (1 - std::pow(f2, D + 1)) / v.om_F2;
    else {
        p1 = 0;
        double q = 1;
        for (int a = 0; a <= D; ++a, q *= f2) p1 += q;
    }
    double s2 = 0;
    for (int m = 0; m <= D; ++m)
        for (int k = 0; k <= m; ++k)
            s2 += binom[m][k] * binom[m][k] * std::pow(g2, m - k) * std::pow(h2, k);
    return p1 * s2;
}

} // namespace

// ---------------------------------------------------------------- index set

IndexSet::IndexSet(int D) : D_(D) {
    if (D < 0) throw InvalidInput("index set degree must be >= 0");
}

MonomialIndex IndexSet::at(int i) const {
    if (i < 0 || i >= size()) throw IndexError("index set position out of range");
    int m = static_cast<int>(std::sqrt(static_cast<double>(i)));
    while (m * m > i) --m;
    while ((m + 1) * (m + 1) <= i) ++m;
    const int r = i - m * m;
    if (r < m) return {r, m};
    return {m, r - m};
}

int IndexSet::index_of(MonomialIndex a) const {
    if (a.alpha1 < 0 || a.alpha2 < 0 || std::max(a.alpha1, a.alpha2) > D_)
        throw IndexError("multi-index outside the truncation");
    const int m = std::max(a.alpha1, a.alpha2);
    if (a.alpha1 < m) return m * m + a.alpha1;
    return m * m + m + a.alpha2;
}

void TruncationSpec::validate() const {
    if (max_degree < 0) throw ConfigError("max_degree must be >= 0");
    if (quad_points <= 0 || (quad_points & (quad_points - 1)) != 0)
        throw ConfigError("quad_points must be a power of two");
    if (quad_points < 4 * (max_degree + 1))
        throw ConfigError("quad_points below the anti-aliasing floor 4(D+1)");
}

CarlesonWindow::CarlesonWindow(cplx x, double hh) : xi(x), h(hh) {
    if (std::abs(std::abs(xi) - 1) > 1e-14) throw InvalidInput("window centre must be unimodular");
    if (!(h > 0 && h <= 1)) throw InvalidInput("window size must lie in (0,1]");
}

// ---------------------------------------------------------------- kernels

cplx reproducing_kernel(const BidiskPoint& a, const BidiskPoint& z) {
    if (!(std::abs(a.w1) < 1 && std::abs(a.w2) < 1)) throw DomainError("kernel centre must be interior");
    return 1.0 / ((1.0 - std::conj(a.w1) * z.w1) * (1.0 - std::conj(a.w2) * z.w2));
}

double evaluation_bound(const BidiskPoint& a) {
    if (!(std::abs(a.w1) < 1 && std::abs(a.w2) < 1)) throw DomainError("evaluation point must be interior");
    return 1 / std::sqrt((1 - std::norm(a.w1)) * (1 - std::norm(a.w2)));
}

// ---------------------------------------------------------------- samples

PullbackSamples boundary_samples(const SymbolParams& p, int Q1, int Q2, GridPlacement placement) {
    p.validate(true);
    if (Q1 <= 0 || Q2 <= 0) throw ConfigError("boundary grid needs positive sizes");
    const auto r1 = uniform_rule(Q1, placement), r2 = uniform_rule(Q2, placement);
    PullbackSamples s;
    const std::size_t n = static_cast<std::size_t>(Q1) * Q2;
    s.nodes.reserve(n);
    s.values.reserve(n);
    s.weights.assign(n, 1.0 / (static_cast<double>(Q1) * Q2));
    for (int i = 0; i < Q1; ++i)
        for (int j = 0; j < Q2; ++j) {
            s.nodes.emplace_back(r1.t[i], r2.t[j]);
            s.values.push_back(symbol(r1.pts[i], r2.pts[j], p));
        }
    return s;
}

PullbackSamples boundary_samples(const SymbolParams& p, const TruncationSpec& spec, GridPlacement placement) {
    spec.validate();
    return boundary_samples(p, spec.quad_points, spec.quad_points, placement);
}

// ---------------------------------------------------------------- HS norms

double hs_density(const SkewSample& v) {
    const double hg = 2 * std::abs(v.G) * std::abs(v.H);
    const double a = v.om_G2 - std::norm(v.H);
    const double lo = a - hg, hi = a + hg;
    if (!(v.om_F2 > 0) || !(lo > 0)) throw DomainError("symbol touches the distinguished boundary: not Hilbert-Schmidt");
    return 1 / (v.om_F2 * std::sqrt(lo * hi));
}

double hs_norm_squared(const SkewSymbol& s, const BoundaryRule& rule) {
    double sum = 0;
    for (std::size_t j = 0; j < rule.size(); ++j) sum += rule.w[j] * hs_density(s.eval(rule.pts[j]));
    return sum;
}

HsEstimate hs_norm_squared(const SkewSymbol& s, const TruncationSpec& spec) {
    spec.validate();
    HsEstimate e;
    e.value = hs_norm_squared(s, uniform_rule(spec.quad_points, GridPlacement::midpoint));
    e.value_doubled = hs_norm_squared(s, uniform_rule(2 * spec.quad_points, GridPlacement::midpoint));
    e.relative_change = std::abs(e.value_doubled - e.value) / e.value_doubled;
    e.converged = e.relative_change <= 0.05;
    return e;
}

HsEstimate hs_norm_squared(const SymbolParams& p, const TruncationSpec& spec) {
    return hs_norm_squared(paper_symbol(p), spec);
}

double column_tail_hs(const SkewSymbol& s, int D, const BoundaryRule& rule) {
    const auto binom = pascal(D);
    double tail2 = 0, scale = 0;
    for (std::size_t j = 0; j < rule.size(); ++j) {
        const auto v = s.eval(rule.pts[j]);
        const double total = hs_density(v);
        tail2 += rule.w[j] * (total - box_density(v, D, binom));
        scale += rule.w[j] * total;
    }
    if (tail2 < -1e-10 * std::max(1.0, scale)) throw Inconsistency("column tail: negative radicand");
    return std::sqrt(std::max(0.0, tail2));
}

double matrix_truncation_error(const SkewSymbol& s, const TruncationSpec& spec, const OperatorMatrix& m) {
    spec.validate();
    const double hs2 = hs_norm_squared(s, uniform_rule(spec.quad_points, GridPlacement::midpoint));
    const double kept = m.entries.squaredNorm();
    const double r = hs2 - kept;
    if (r < -1e-10) throw Inconsistency("truncation error: negative radicand (quadrature mismatch)");
    return std::sqrt(std::max(0.0, r));
}

double matrix_truncation_error(const SkewSymbol& s, const TruncationSpec& spec) {
    spec.validate();
    hs_norm_squared(s, uniform_rule(spec.quad_points, GridPlacement::midpoint));  // rejects non-HS symbols
    return matrix_truncation_error(s, spec, assemble_matrix(s, spec));
}

double matrix_truncation_error(const SymbolParams& p, const TruncationSpec& spec) {
    return matrix_truncation_error(paper_symbol(p), spec);
}

// ---------------------------------------------------------------- assembly

OperatorMatrix assemble_matrix(const SkewSymbol& s, const TruncationSpec& spec) {
    spec.validate();
    const int D = spec.max_degree, Q = spec.quad_points;
    const IndexSet idx(D);
    const auto rule = uniform_rule(Q, GridPlacement::midpoint);
    const auto v = sample(s, rule);
    const auto binom = pascal(2 * D);

    OperatorMatrix M;
    M.D = D;
    M.Q = Q;
    M.symbol_name = s.name;
    M.params_hash = s.params_hash;
    M.entries = Eigen::MatrixXcd::Zero(idx.size(), idx.size());

    // shifted grid t_j = 2pi(j + 1/2)/Q: coefficient b picks up e^{-i pi b/Q}
    std::vector<cplx> phase(D + 1);
    for (int b = 0; b <= D; ++b) phase[b] = std::polar(1.0 / Q, -kPi * b / Q);

    Fft fft(Q);
    // powers of F and G, H^k applied on the fly
    const int maxF = s.base == SecondBase::equals_first ? 2 * D : D;
    std::vector<std::vector<cplx>> Fp(maxF + 1, std::vector<cplx>(Q)), Gp;
    for (int j = 0; j < Q; ++j) {
        cplx x = 1;
        for (int a = 0; a <= maxF; ++a, x *= v[j].F) Fp[a][j] = x;
    }
    if (s.base == SecondBase::general) {
        Gp.assign(D + 1, std::vector<cplx>(Q));
        for (int j = 0; j < Q; ++j) {
            cplx x = 1;
            for (int m = 0; m <= D; ++m, x *= v[j].G) Gp[m][j] = x;
        }
    }
    std::vector<cplx> Hk(Q, 1.0), coef(D + 1);
    const int kmax = s.h_zero ? 0 : D;
    for (int k = 0; k <= kmax; ++k) {
        if (k > 0)
            for (int j = 0; j < Q; ++j) Hk[j] *= v[j].H;
        const int mmax = s.base == SecondBase::zero ? 0 : D - k;
        for (int a = 0; a <= D; ++a)
            for (int m = 0; m <= mmax; ++m) {
                cplx* in = fft.in();
                if (s.base == SecondBase::equals_first)
                    for (int j = 0; j < Q; ++j) in[j] = Fp[a + m][j] * Hk[j];
                else if (s.base == SecondBase::zero)
                    for (int j = 0; j < Q; ++j) in[j] = Fp[a][j] * Hk[j];
                else
                    for (int j = 0; j < Q; ++j) in[j] = Fp[a][j] * Gp[m][j] * Hk[j];
                fft.run();
                const cplx* out = fft.out();
                const int col = idx.index_of({a, m + k});
                const double bc = binom[m + k][k];
                for (int b = 0; b <= D; ++b) M.entries(idx.index_of({b, k}), col) = bc * phase[b] * out[b];
            }
    }
    try {
        M.tail_hs = matrix_truncation_error(s, spec, M);
    } catch (const DomainError&) {
        M.tail_hs = std::numeric_limits<double>::infinity();
    }
    return M;
}

OperatorMatrix assemble_matrix(const SymbolParams& p, const TruncationSpec& spec) {
    return assemble_matrix(paper_symbol(p), spec);
}

GramMatrix assemble_gram(const SkewSymbol& s, int D, const BoundaryRule& rule) {
    if (D < 0) throw ConfigError("gram degree must be >= 0");
    const IndexSet idx(D);
    const int n = idx.size();
    const auto v = sample(s, rule);
    const auto binom = pascal(D);
    const std::size_t N = rule.size();

    GramMatrix G;
    G.D = D;
    G.entries = Eigen::MatrixXcd::Zero(n, n);

    const int kmax = s.h_zero ? 0 : D;
    constexpr std::size_t chunk = 512;
    for (int k = 0; k <= kmax; ++k) {
        // reduced columns: F^s (equal bases), F^a (G = 0) or F^a G^m (general)
        int ncol;
        if (s.base == SecondBase::equals_first) ncol = 2 * D - k + 1;
        else if (s.base == SecondBase::zero) ncol = D + 1;
        else ncol = (D + 1) * (D - k + 1);
        Eigen::MatrixXcd Hk = Eigen::MatrixXcd::Zero(ncol, ncol);
        for (std::size_t j0 = 0; j0 < N; j0 += chunk) {
            const std::size_t rows = std::min(chunk, N - j0);
            Eigen::MatrixXcd V(rows, ncol);
            for (std::size_t r = 0; r < rows; ++r) {
                const auto& x = v[j0 + r];
                const double sc = std::sqrt(rule.w[j0 + r]) * std::pow(std::abs(x.H), k);
                if (s.base == SecondBase::general) {
                    cplx fa = sc;
                    for (int a = 0; a <= D; ++a, fa *= x.F) {
                        cplx g = fa;
                        for (int m = 0; m <= D - k; ++m, g *= x.G) V(r, a * (D - k + 1) + m) = g;
                    }
                } else {
                    cplx f = sc;
                    for (int c = 0; c < ncol; ++c, f *= x.F) V(r, c) = f;
                }
            }
            Hk.noalias() += V.adjoint() * V;
        }
        // scatter: alpha = (a, m + k)
        for (int i = 0; i < n; ++i) {
            const auto al = idx.at(i);
            if (al.alpha2 < k) continue;
            if (s.base == SecondBase::zero && al.alpha2 != k) continue;
            const double bi = binom[al.alpha2][k];
            const int ri = s.base == SecondBase::equals_first ? al.alpha1 + al.alpha2 - k
                         : s.base == SecondBase::zero        ? al.alpha1
                                                             : al.alpha1 * (D - k + 1) + al.alpha2 - k;
            for (int j = 0; j < n; ++j) {
                const auto be = idx.at(j);
                if (be.alpha2 < k) continue;
                if (s.base == SecondBase::zero && be.alpha2 != k) continue;
                const int rj = s.base == SecondBase::equals_first ? be.alpha1 + be.alpha2 - k
                             : s.base == SecondBase::zero        ? be.alpha1
                                                                 : be.alpha1 * (D - k + 1) + be.alpha2 - k;
                G.entries(i, j) += bi * binom[be.alpha2][k] * Hk(ri, rj);
            }
        }
    }
    G.hs2 = hs_norm_squared(s, rule);
    G.tail_hs = column_tail_hs(s, D, rule);
    return G;
}

// ---------------------------------------------------------------- windows

namespace {

template <class T>
T gap_at(T t) {  // |1 - chi(e^{it})|
    return std::abs(cusp(DiskPoint<T>::on_circle(t)).chi3);
}

// Edges of a graded mesh on [0, th]: geometric toward 0, and toward pi/2 when inside.
std::vector<double> window_edges(double th, const GradedMesh& mesh) {
    std::vector<double> e{0.0, th};
    for (int k = 1; k <= mesh.levels; ++k) e.push_back(th * std::ldexp(1.0, -k));
    if (th > kPi / 2) {
        e.push_back(kPi / 2);
        for (int k = 1; k <= mesh.corner_levels; ++k) {
            const double d = kPi / 4 * std::ldexp(1.0, -k);
            e.push_back(kPi / 2 - d);
            if (kPi / 2 + d < th) e.push_back(kPi / 2 + d);
        }
    }
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    return e;
}

template <class T>
double window_radius(double h, bool& empty) {
    empty = false;
    if (!(h > 0 && h <= 1)) throw InvalidInput("window size h must lie in (0,1]");
    if (gap_at<T>(T(kPi)) <= h) return kPi;
    double lo = std::log(1e-300), hi = std::log(kPi);
    if (gap_at<T>(T(std::exp(lo))) > h) {
        empty = true;
        return 0;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::abs(lo); ++it) {
        const double mid = (lo + hi) / 2;
        (gap_at<T>(T(std::exp(mid))) <= h ? lo : hi) = mid;
    }
    return std::exp(lo);
}

} // namespace

template <class T>
WindowIntegral window_integral_I0(double h, const GradedMesh& mesh) {
    WindowIntegral r;
    r.t_h = window_radius<T>(h, r.empty);
    if (r.empty) return r;
    std::vector<double> x, w;
    gauss_panels(window_edges(r.t_h, mesh), mesh.order, x, w);
    T sum = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto tr = cusp(DiskPoint<T>::on_circle(T(x[i])));
        sum += T(w[i]) / (tr.one_minus_abs_chi * tr.one_minus_abs_chi);
    }
    r.value = static_cast<double>(2 * sum);
    return r;
}

template <class T>
WindowIntegral window_integral_I(double h, const SymbolParams& p, const TruncationSpec& spec, const GradedMesh& mesh) {
    p.validate(true);
    spec.validate();
    using C = std::complex<T>;
    WindowIntegral r;
    r.t_h = window_radius<T>(h, r.empty);
    if (r.empty) return r;
    std::vector<double> x, w;
    gauss_panels(window_edges(r.t_h, mesh), mesh.order, x, w);
    const int Q = spec.quad_points;
    std::vector<C> u(Q);
    for (int l = 0; l < Q; ++l) {
        const T a = 2 * std::numbers::pi_v<T> * l / Q;
        u[l] = p.g_kind == GKind::identity_in_z2 ? C(std::cos(a), std::sin(a)) : C(1);
    }
    T sum = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto tr = cusp(DiskPoint<T>::on_circle(T(x[i])));
        const C b = T(p.c) * phi_of_chi(tr, T(p.theta));
        const T om = tr.one_minus_abs_chi * (1 + std::abs(tr.chi));
        T inner = 0;
        for (int l = 0; l < Q; ++l) {
            const C bu = b * u[l];
            const T om2 = om - 2 * std::real(std::conj(tr.chi) * bu) - std::norm(bu);
            inner += (1 + std::abs(tr.chi + bu)) / om2;
        }
        sum += T(w[i]) * inner / T(Q) / tr.one_minus_abs_chi;
    }
    r.value = static_cast<double>(2 * sum / (2 * std::numbers::pi_v<T>));
    return r;
}

template WindowIntegral window_integral_I0<double>(double, const GradedMesh&);
template WindowIntegral window_integral_I0<long double>(double, const GradedMesh&);
template WindowIntegral window_integral_I<double>(double, const SymbolParams&, const TruncationSpec&, const GradedMesh&);
template WindowIntegral window_integral_I<long double>(double, const SymbolParams&, const TruncationSpec&,
                                                       const GradedMesh&);

} // namespace cuspop
