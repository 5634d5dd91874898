#include "cuspop/verifier.hpp"

#include "cuspop/errors.hpp"
#include "cuspop/hash.hpp"
#include "cuspop/polynomial.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace cuspop {

using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-10;
constexpr std::size_t kMaxWitnesses = 20;

json cjson(std::complex<long double> z) {
    return json::array({fmt_double(static_cast<double>(z.real())), fmt_double(static_cast<double>(z.imag()))});
}

double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Interior point with deficit 2^-u, u ~ U(0, umax).
UnitDiskPoint clustered_interior(std::mt19937_64& rng, double umax) {
    std::uniform_real_distribution<double> U(0, umax), A(-kPi, kPi);
    const double u = U(rng);
    return UnitDiskPoint::polar(std::exp2(-u), A(rng));
}

} // namespace

void VerificationReport::violate(json w) {
    ++violation_count;
    if (violations.size() < kMaxWitnesses) violations.push_back({std::move(w)});
}

json VerificationReport::to_json() const {
    json j;
    j["suite"] = suite;
    j["seed"] = seed;
    j["samples_tested"] = samples_tested;
    j["passed"] = passed();
    j["violation_count"] = violation_count;
    json v = json::array();
    for (const auto& w : violations) v.push_back(w.data);
    j["violations"] = v;
    json c = json::object();
    for (const auto& [k, x] : constants) c[k] = x;
    j["constants"] = c;
    j["notes"] = notes;
    return j;
}

CoveringFamily CoveringFamily::make(int n, const SymbolParams& p) {
    CoveringFamily f;
    f.j0 = p.j0;
    f.Nn = covering_count(n, p.theta, p.sigma);
    for (int j = f.j0; j <= f.Nn; ++j) {
        const double s = std::pow(p.sigma, j);
        f.centers.push_back(1 - s);
        f.radii.push_back(s / 4);
    }
    return f;
}

int covering_count(int n, double theta, double sigma) {
    if (n < 1) throw InvalidInput("covering_count: n must be >= 1");
    return static_cast<int>(std::floor(std::log(2.0 * n) / (theta * std::log(1 / sigma)))) + 1;
}

long long m_j(int n, int j, double theta, double sigma) {
    return static_cast<long long>(std::floor(n * std::pow(sigma, j * theta))) + 1;
}

// ---------------------------------------------------------------- geometry

VerificationReport check_cusp_geometry(int sample_count, std::uint64_t seed, const SymbolParams& p) {
    if (sample_count < 10000) throw ConfigError("check_cusp_geometry: sample_count must be >= 1e4");
    VerificationReport r;
    r.suite = "cusp_geometry";
    r.seed = seed;
    std::mt19937_64 rng(seed);

    auto lens = [&](const UnitDiskPoint& z, const CuspChainTrace<double>& tr, const char* kind) {
        const cplx x = tr.chi;
        const double e1 = std::abs(x - 0.5) - 0.5;
        const double e2 = 0.5 - std::abs(x - cplx(1, 0.5));
        const double e3 = 0.5 - std::abs(x - cplx(1, -0.5));
        const double e4 = std::abs(tr.chi3) - 1;   // |chi - 1| <= 1
        if (e1 > kTol || e2 > kTol || e3 > kTol || e4 > kTol)
            r.violate({{"item", "3/4"}, {"kind", kind}, {"z", cjson(z.value())}, {"offset", cjson(z.offset())},
                       {"chi", cjson(x)}});
        const cplx xc = cusp(z.conj()).chi;
        if (std::abs(xc - std::conj(x)) > kTol)
            r.violate({{"item", "4-symmetry"}, {"z", cjson(z.value())}, {"chi", cjson(x)}, {"chi_conj", cjson(xc)}});
    };

    // interior, clustered toward the circle
    double ksup = 0;
    for (int i = 0; i < sample_count; ++i) {
        const auto z = clustered_interior(rng, 40);
        const auto tr = cusp(z);
        lens(z, tr, "interior");
        ksup = std::max(ksup, std::abs(tr.chi3) / tr.one_minus_abs_chi);
        ++r.samples_tested;
    }
    // boundary: item 6, |y| <= 2(1 - x)^2 and 0 <= x <= 1
    std::uniform_real_distribution<double> T(-kPi, kPi);
    for (int i = 0; i < sample_count; ++i) {
        const auto z = UnitDiskPoint::on_circle(T(rng));
        const auto tr = cusp(z);
        lens(z, tr, "boundary");
        const double x = tr.chi.real(), h = tr.chi3.real(), y = tr.chi.imag();
        if (x < -kTol || x > 1 + kTol || std::abs(y) > 2 * h * h + kTol)
            r.violate({{"item", "6"}, {"z", cjson(z.value())}, {"offset", cjson(z.offset())}, {"chi", cjson(tr.chi)}});
        ++r.samples_tested;
    }
    // real axis: exactly real images
    std::uniform_real_distribution<double> X(-1, 1);
    for (int i = 0; i < sample_count / 10; ++i) {
        const double x = X(rng);
        const auto tr = cusp(UnitDiskPoint::from_value(x));
        if (tr.chi.imag() != 0) r.violate({{"item", "real-axis"}, {"z", fmt_double(x)}, {"chi", cjson(tr.chi)}});
        ++r.samples_tested;
    }
    if (cusp(UnitDiskPoint::from_value(1)).chi != cplx(1)) r.violate({{"item", "4"}, {"z", "1"}, {"note", "chi(1) != 1"}});

    // item 2: sup |1 - chi|/(1 - |chi|) must stay below the frozen K_hat
    r.constants["K_sampled_sup"] = ksup;
    r.constants["K_hat"] = p.K_hat;
    if (ksup > p.K_hat) r.violate({{"item", "2"}, {"sup_ratio", ksup}, {"K_hat", p.K_hat}});

    // item 5: (1 - Re chi(e^{it})) log(1/t) on [1e-8, pi/4], log-uniform t plus both ends
    auto bracket = [&](int count) {
        std::uniform_real_distribution<double> L(std::log(1e-8), std::log(kPi / 4));
        double lo = std::numeric_limits<double>::infinity(), hi = 0;
        auto take = [&](double t) {
            const auto tr = cusp(UnitDiskPoint::on_circle(t));
            const double q = tr.chi3.real() * std::log(1 / t);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        };
        take(1e-8);
        take(kPi / 4);
        for (int i = 0; i < count; ++i) take(std::exp(L(rng)));
        return std::pair{lo, hi};
    };
    const auto b1 = bracket(sample_count), b2 = bracket(2 * sample_count);
    r.samples_tested += 3 * static_cast<std::size_t>(sample_count);
    r.constants["item5_r_minus"] = b1.first;
    r.constants["item5_r_plus"] = b1.second;
    r.constants["item5_r_minus_doubled"] = b2.first;
    r.constants["item5_r_plus_doubled"] = b2.second;
    const double d1 = std::abs(b2.first - b1.first) / b1.first, d2 = std::abs(b2.second - b1.second) / b1.second;
    r.constants["item5_relative_drift"] = std::max(d1, d2);
    if (!(b1.first > 0 && b1.second < std::numeric_limits<double>::infinity()) || d1 > 0.05 || d2 > 0.05)
        r.violate({{"item", "5"}, {"bracket", {b1.first, b1.second}}, {"bracket_doubled", {b2.first, b2.second}}});
    return r;
}

// ---------------------------------------------------------------- calibration

VerificationReport check_calibration(const SymbolParams& p, int sample_count, std::uint64_t seed) {
    if (sample_count <= 0) throw ConfigError("check_calibration: sample_count must be positive");
    p.validate(true);
    VerificationReport r;
    r.suite = "calibration";
    r.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0, 1), A(-kPi, kPi);
    std::array<cplx, 16> u;
    for (int l = 0; l < 16; ++l) u[l] = std::polar(1.0, 2 * kPi * l / 16);

    double min_margin = std::numeric_limits<double>::infinity(), min_rel = min_margin, min_half = min_margin;
    for (int i = 0; i < sample_count; ++i) {
        UnitDiskPoint z = UnitDiskPoint::from_value(0);
        switch (i % 3) {
        case 0: z = clustered_interior(rng, 52); break;
        case 1: {   // approach the cusp tangentially
            const double a = (U(rng) < 0.5 ? -1 : 1) * std::pow(10.0, -15 * U(rng));
            z = UnitDiskPoint::polar(std::exp2(-52 * U(rng)), a);
            break;
        }
        default: {  // offsets down to 1e-200 around z = 1
            const double rho = std::pow(10.0, -200 * U(rng));
            const double psi = (kPi / 2) * (2 * U(rng) - 1) * (1 - 1e-12);
            if (rho > 2 * std::cos(psi)) {
                --i;
                continue;
            }
            z = UnitDiskPoint::from_offset(std::polar(rho, psi));
        }
        }
        const auto tr = cusp(z);
        if (!(tr.one_minus_abs_chi > 0)) continue;   // rounded onto the cusp itself
        const cplx ph = p.c * phi_of_chi(tr, p.theta);
        const double margin = tr.one_minus_abs_chi - 2 * std::abs(ph);
        if (!(margin > 0))
            r.violate({{"check", "|chi| + 2c|phi(chi)| < 1"}, {"offset", cjson(z.offset())}, {"margin", margin}});
        min_margin = std::min(min_margin, margin);
        min_rel = std::min(min_rel, margin / tr.one_minus_abs_chi);
        const double om = tr.one_minus_abs_chi * (1 + std::abs(tr.chi));
        for (const auto& ul : u) {
            const cplx b = ph * ul;
            const cplx w = tr.chi + b;
            const double omw = (om - 2 * std::real(std::conj(tr.chi) * b) - std::norm(b)) / (1 + std::abs(w));
            const double ratio = omw / (tr.one_minus_abs_chi / 2);
            min_half = std::min(min_half, ratio);
            if (!(ratio >= 1))
                r.violate({{"check", "1-|w| >= (1-|chi|)/2"}, {"offset", cjson(z.offset())}, {"u", cjson(ul)},
                           {"ratio", ratio}});
        }
        ++r.samples_tested;
    }
    // z = -1: chi = 0, phi(0) = 1/e
    const double at_minus_one = 2 * p.c * std::abs(phi_of_chi(cusp(UnitDiskPoint::from_value(-1)), p.theta));
    if (!(at_minus_one < 1)) r.violate({{"check", "z=-1"}, {"value", at_minus_one}});
    r.constants["c"] = p.c;
    r.constants["K_hat"] = p.K_hat;
    r.constants["min_margin"] = min_margin;
    r.constants["min_relative_margin"] = min_rel;
    r.constants["min_half_ratio"] = min_half;
    r.notes.push_back("z = 1 excluded: equality holds there in the limit");
    return r;
}

// ---------------------------------------------------------------- covering

VerificationReport check_covering(int n, int sample_count, const SymbolParams& p, std::uint64_t seed) {
    if (n < 2) throw ConfigError("check_covering: n must be >= 2");
    if (sample_count <= 0) throw ConfigError("check_covering: sample_count must be positive");
    p.validate(true);
    using L = long double;
    using LC = std::complex<L>;
    VerificationReport r;
    r.suite = "covering_n" + std::to_string(n);
    r.seed = seed;
    const auto fam = CoveringFamily::make(n, p);
    for (std::size_t i = 0; i < fam.centers.size(); ++i)
        if (!(fam.centers[i] + fam.radii[i] < 1)) r.violate({{"check", "disk inside D"}, {"j", fam.j0 + int(i)}});

    const L sj0 = std::pow(L(p.sigma), p.j0) / L(p.K_hat);   // |chi| > 1 - sj0
    const L hn = L(1) / n;
    // |1 - chi| ~ pi / (2 log 1/|1 - z|): offsets between e^{-(pi/2) n - 10} and 1e-9 cover the region
    const L lmin = -(kPi / 2) * n * 1.1L - 10, lmax = std::log(1e-9L);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0, 1);
    std::size_t attempts = 0;
    const std::size_t max_attempts = 40 * static_cast<std::size_t>(sample_count);
    L worst = 0;   // max over accepted points of min_j |chi - a_j| / rho_j
    while (r.samples_tested < static_cast<std::size_t>(sample_count) && attempts < max_attempts) {
        ++attempts;
        const L rho = std::exp(lmin + (lmax - lmin) * L(U(rng)));
        DiskPoint<L> z = DiskPoint<L>::from_value(0);
        const int kind = attempts % 3;
        if (kind == 0) {   // boundary
            z = DiskPoint<L>::on_circle((U(rng) < 0.5 ? -1 : 1) * rho);
        } else if (kind == 1) {   // just inside the boundary
            z = DiskPoint<L>::polar(rho * rho * L(U(rng)), (U(rng) < 0.5 ? -1 : 1) * rho);
        } else {
            const L psi = L(kPi / 2) * L(2 * U(rng) - 1);
            if (rho > 2 * std::cos(psi)) continue;
            z = DiskPoint<L>::from_offset(std::polar(rho, psi));
        }
        const auto tr = cusp(z);
        if (!(tr.one_minus_abs_chi < sj0) || !(std::abs(tr.chi3) > hn)) continue;
        ++r.samples_tested;
        L best = std::numeric_limits<L>::infinity();
        int bj = -1;
        for (int j = fam.j0; j <= fam.Nn; ++j) {
            const L s = std::pow(L(p.sigma), j);
            const L q = std::abs(LC(s, 0) - tr.chi3) / (s / 4);   // chi - a_j = sigma^j - chi3
            if (q < best) best = q, bj = j;
        }
        worst = std::max(worst, best);
        if (!(best < 1))
            r.violate({{"offset", cjson(z.offset())}, {"chi", cjson(tr.chi)}, {"one_minus_chi", cjson(tr.chi3)},
                       {"nearest_j", bj}, {"distance_over_radius", static_cast<double>(best)}});
    }
    r.constants["N_n"] = fam.Nn;
    r.constants["j0"] = fam.j0;
    r.constants["attempts"] = static_cast<double>(attempts);
    r.constants["max_distance_over_radius"] = static_cast<double>(worst);
    if (r.samples_tested == 0)
        r.notes.push_back("no point of the image satisfies both |chi| > 1 - sigma^j0/K_hat and |chi - 1| > 1/n: "
                          "the statement is vacuous at this n");
    else if (r.samples_tested < static_cast<std::size_t>(sample_count))
        r.notes.push_back("qualifying region is thin: fewer accepted samples than requested");
    return r;
}

// ---------------------------------------------------------------- derivative and Schwarz bounds

VerificationReport check_derivative_bound(int trial_count, std::uint64_t seed) {
    if (trial_count <= 0) throw ConfigError("check_derivative_bound: trial_count must be positive");
    VerificationReport r;
    r.suite = "derivative_bound";
    r.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> Dg(0, 10), Kd(0, 6);
    std::uniform_real_distribution<double> U(0, 1), A(-kPi, kPi);
    double worst = 0;
    for (int t = 0; t < trial_count; ++t) {
        const int k = Kd(rng), d1 = Dg(rng), d2 = Dg(rng);
        const cplx b = std::polar(1 - std::pow(10.0, -3 * U(rng)), A(rng));
        Poly2 f;
        switch (t % 4) {
        case 0: {   // extremal: Riesz representer of f -> h_k(b) among degree <= (d1, max(d2,k))
            const int e2 = std::max(d2, k);
            f = Poly2(d1, e2);
            for (int i = 0; i <= d1; ++i)
                for (int j = k; j <= e2; ++j) {
                    double fall = 1;
                    for (int s = 0; s < k; ++s) fall *= j - s;
                    f.c[i][j] = std::conj(fall * std::pow(b, i + j - k));
                }
            const double nn = f.norm2();
            for (auto& row : f.c)
                for (auto& x : row) x /= nn;
            break;
        }
        case 1:
            f = Poly2(0, k);
            f.c[0][k] = 1;   // z2^k: h_k = k!
            break;
        default: f = Poly2::random(d1, d2, rng);
        }
        const cplx hk = f.d2(k).diagonal()(b);
        const double bound = factorial(k) * std::pow(2.0, k + 1) / std::pow(1 - std::abs(b), k + 1) * f.norm2();
        worst = std::max(worst, std::abs(hk) / bound);
        if (!(std::abs(hk) <= bound))
            r.violate({{"k", k}, {"b", cjson(b)}, {"degrees", {f.deg1(), f.deg2()}}, {"abs_h", std::abs(hk)},
                       {"bound", bound}, {"trial", t}});
        ++r.samples_tested;
    }
    // constant 1, k >= 1: h_k = 0
    Poly2 one(0, 0);
    one.c[0][0] = 1;
    for (int k = 1; k <= 6; ++k)
        if (std::abs(one.d2(k).diagonal()(0.5)) != 0) r.violate({{"k", k}, {"note", "constant has nonzero h_k"}});
    r.constants["max_ratio_to_bound"] = worst;
    return r;
}

VerificationReport check_schwarz_bound(int trial_count, std::uint64_t seed) {
    if (trial_count <= 0) throw ConfigError("check_schwarz_bound: trial_count must be positive");
    VerificationReport r;
    r.suite = "schwarz_bound";
    r.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> Nd(0, 8), Kd(0, 4), Pd(0, 4);
    std::uniform_real_distribution<double> U(0, 1), A(-kPi, kPi);
    std::normal_distribution<double> G;
    const double rho = 0.5;
    auto randpoly = [&](int d) {
        Poly1 p;
        for (int i = 0; i <= d; ++i) p.c.push_back({G(rng), G(rng)});
        return p;
    };
    double worst = 0;
    for (int t = 0; t < trial_count; ++t) {
        const int n = Nd(rng), k = Kd(rng);
        const cplx a = std::polar(0.99 * std::sqrt(U(rng)), A(rng));
        const Poly1 left = Poly1::linear_power(a, n) * randpoly(Pd(rng));
        Poly1 zk;
        zk.c.assign(k + 1, 0.0);
        zk.c[k] = 1;
        Poly2 f = Poly2::tensor(left, zk * randpoly(Pd(rng)));
        const double nn = f.norm2();
        for (auto& row : f.c)
            for (auto& x : row) x /= nn;
        const cplx b = t % 10 == 0 ? a : a + std::polar(rho / 2 * (1 - std::abs(a)) * U(rng), A(rng));
        const cplx hk = f.d2(k).diagonal()(b);
        const double bound = std::pow(rho, n) * factorial(k) * std::pow(4.0, k + 1) / std::pow(1 - std::abs(a), k + 1);
        worst = std::max(worst, std::abs(hk) / bound);
        if (!(std::abs(hk) <= bound))
            r.violate({{"n", n}, {"k", k}, {"a", cjson(a)}, {"b", cjson(b)}, {"abs_h", std::abs(hk)},
                       {"bound", bound}, {"trial", t}});
        ++r.samples_tested;
    }
    r.constants["max_ratio_to_bound"] = worst;
    r.constants["rho"] = rho;
    return r;
}

// ---------------------------------------------------------------- codimension

VerificationReport check_codim_count(const std::vector<int>& n_list, double theta) {
    if (n_list.empty()) throw ConfigError("check_codim_count: empty n list");
    if (!(theta > 0 && theta < 1)) throw ConfigError("check_codim_count: theta must lie in (0,1)");
    namespace bmp = boost::multiprecision;
    using big = bmp::cpp_bin_float_50;
    VerificationReport r;
    r.suite = "codim_count";
    const double sigma = 7.0 / 8.0;
    const double st = std::pow(sigma, theta);
    const double limit = st / (1 - st);
    const big bs = big(7) / 8, bt = big(theta);
    double q = 0;
    int n_last = 0;
    double ratio_last = 0;
    for (int n : n_list) {
        if (n < 1) throw ConfigError("check_codim_count: n must be >= 1");
        const int Nn = covering_count(n, theta, sigma);
        const big bN = bmp::floor(bmp::log(big(2 * n)) / (bt * bmp::log(1 / bs))) + 1;
        if (big(Nn) != bN) r.violate({{"n", n}, {"N_n", Nn}, {"N_n_reference", bN.convert_to<double>()}});
        long long sum_m = 0;
        for (int j = 1; j <= Nn; ++j) {
            const long long m = m_j(n, j, theta, sigma);
            const big bm = bmp::floor(big(n) * bmp::pow(bs, bt * j)) + 1;
            if (big(m) != bm) r.violate({{"n", n}, {"j", j}, {"m_j", m}, {"m_j_reference", bm.convert_to<double>()}});
            sum_m += m;
        }
        const long long count = static_cast<long long>(n) * sum_m;   // sum over l < n of sum_j m_j
        const double ratio = static_cast<double>(count) / (static_cast<double>(n) * n);
        // displayed bound: count <= sum_l sum_j (n sigma^{j theta} + 1) <= n^2 limit + n N_n
        if (ratio > limit + static_cast<double>(Nn) / n + 1e-12)
            r.violate({{"n", n}, {"ratio", ratio}, {"bound", limit + static_cast<double>(Nn) / n}});
        q = std::max(q, ratio);
        r.constants["ratio_n" + std::to_string(n)] = ratio;
        if (n > n_last) n_last = n, ratio_last = ratio;
        ++r.samples_tested;
    }
    r.constants["q"] = q;
    r.constants["series_limit"] = limit;
    r.constants["ratio_at_max_n"] = ratio_last;
    r.constants["relative_gap_at_max_n"] = std::abs(ratio_last - limit) / limit;
    if (n_last >= 10000 && std::abs(ratio_last - limit) / limit > 0.05)
        r.violate({{"n", n_last}, {"ratio", ratio_last}, {"limit", limit}, {"check", "within 5% of the series"}});
    return r;
}

// ---------------------------------------------------------------- aggregation

std::vector<VerificationReport> run_all(const RunConfig& cfg, const SymbolParams& p) {
    cfg.validate();
    const std::uint64_t s = static_cast<std::uint64_t>(cfg.seed);
    std::vector<VerificationReport> out;
    out.push_back(check_cusp_geometry(cfg.geometry_samples, s, p));
    out.push_back(check_calibration(p, cfg.calibration_samples, s + 1));
    for (int n : cfg.covering_n) out.push_back(check_covering(n, cfg.covering_samples, p, s + 2));
    out.push_back(check_derivative_bound(cfg.derivative_trials, s + 3));
    out.push_back(check_schwarz_bound(cfg.schwarz_trials, s + 4));
    out.push_back(check_codim_count(cfg.codim_n, cfg.theta));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.suite < b.suite; });
    return out;
}

std::vector<VerificationReport> run_all(const RunConfig& cfg) {
    cfg.validate();
    return run_all(cfg, resolve_params(cfg));
}

json reports_to_json(const std::vector<VerificationReport>& reports, const RunConfig& cfg) {
    json j;
    j["config_hash"] = hex64(cfg.hash());
    j["seed"] = cfg.seed;
    bool ok = true;
    json arr = json::array();
    for (const auto& r : reports) {
        ok = ok && r.passed();
        arr.push_back(r.to_json());
    }
    j["passed"] = ok;
    j["suites"] = arr;
    return j;
}

} // namespace cuspop
