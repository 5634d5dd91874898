#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspop/errors.hpp"
#include "cuspop/hardy.hpp"
#include "cuspop/polynomial.hpp"
#include "oracles.hpp"

#include <random>

using namespace cuspop;

TEST_CASE("index set ordering and round trip") {
    const IndexSet idx(5);
    CHECK(idx.size() == 36);
    for (int i = 0; i < idx.size(); ++i) CHECK(idx.index_of(idx.at(i)) == i);
    // degree-d block is a prefix
    const IndexSet small(2);
    for (int i = 0; i < small.size(); ++i) CHECK(idx.at(i) == small.at(i));
    CHECK(idx.at(0) == MonomialIndex{0, 0});
    CHECK(idx.at(1) == MonomialIndex{0, 1});
    CHECK(idx.at(2) == MonomialIndex{1, 0});
    CHECK(idx.at(3) == MonomialIndex{1, 1});
}

TEST_CASE("truncation spec validation") {
    const auto spec = [](int d, int q) { return TruncationSpec{d, q}; };
    CHECK_NOTHROW(TruncationSpec{48, 1024}.validate());
    CHECK_THROWS_AS(spec(48, 1000).validate(), ConfigError);
    CHECK_THROWS_AS(spec(48, 128).validate(), ConfigError);
    CHECK_THROWS_AS(spec(-1, 128).validate(), ConfigError);
}

TEST_CASE("matrix assembly agrees with a brute-force torus transform") {
    const auto p = SymbolParams::make(0.5, 0.3, 2.5);   // large c so the z2 term is visible
    const TruncationSpec spec{4, 64};
    const auto M = assemble_matrix(p, spec);
    const IndexSet idx(4);
    auto Phi = [&](double t1, double t2) {
        return symbol(UnitDiskPoint::on_circle(t1), UnitDiskPoint::on_circle(t2), p);
    };
    double err = 0;
    for (int a = 0; a < idx.size(); ++a)
        for (int b = 0; b < idx.size(); ++b) {
            const auto al = idx.at(a), be = idx.at(b);
            const auto f = [&](double t1, double t2) {
                const auto w = Phi(t1, t2);
                return std::pow(w.w1, al.alpha1) * std::pow(w.w2, al.alpha2);
            };
            err = std::max(err, std::abs(M.entries(b, a) - oracle::torus_coefficient(f, be.alpha1, be.alpha2, 64, 8)));
        }
    CHECK(err < 1e-12);
    CHECK(M.params_hash == p.hash());
}

TEST_CASE("scaling symbol: diagonal matrix and geometric Hilbert-Schmidt norm") {
    const double r1 = 0.6, r2 = 0.3;
    const auto s = scaling_symbol(r1, r2);
    const TruncationSpec spec{6, 64};
    const auto M = assemble_matrix(s, spec);
    const IndexSet idx(6);
    for (int i = 0; i < idx.size(); ++i) {
        const auto a = idx.at(i);
        CHECK(std::abs(M.entries(i, i) - std::pow(r1, a.alpha1) * std::pow(r2, a.alpha2)) < 1e-14);
    }
    CHECK((M.entries - Eigen::MatrixXcd(M.entries.diagonal().asDiagonal())).norm() < 1e-13);

    const double hs2 = oracle::geometric(r1 * r1) * oracle::geometric(r2 * r2);
    const auto est = hs_norm_squared(s, spec);
    CHECK(est.value == doctest::Approx(hs2).epsilon(1e-13));
    CHECK(est.converged);
    double kept = 0;
    for (int i = 0; i < idx.size(); ++i) kept += std::norm(M.entries(i, i));
    CHECK(M.tail_hs == doctest::Approx(std::sqrt(hs2 - kept)).epsilon(1e-6));
    CHECK(column_tail_hs(s, 6, uniform_rule(64, GridPlacement::midpoint)) ==
          doctest::Approx(std::sqrt(hs2 - kept)).epsilon(1e-6));
}

TEST_CASE("identity is not Hilbert-Schmidt") {
    CHECK_THROWS_AS(matrix_truncation_error(identity_symbol(), TruncationSpec{4, 64}), DomainError);
    const auto M = assemble_matrix(identity_symbol(), TruncationSpec{4, 64});
    CHECK(std::isinf(M.tail_hs));
    CHECK((M.entries - Eigen::MatrixXcd::Identity(25, 25)).norm() < 1e-13);
}

TEST_CASE("Gram assembly equals the brute-force L2 Gram") {
    const auto p = SymbolParams::make(0.5, 0.3, 2.5);
    const auto s = paper_symbol(p);
    const auto rule = uniform_rule(32, GridPlacement::midpoint);
    const int D = 3;
    const auto G = assemble_gram(s, D, rule);
    const IndexSet idx(D);
    const int Q2 = 16;
    Eigen::MatrixXcd ref = Eigen::MatrixXcd::Zero(idx.size(), idx.size());
    for (std::size_t j = 0; j < rule.size(); ++j)
        for (int l = 0; l < Q2; ++l) {
            const auto w = symbol(rule.pts[j], UnitDiskPoint::on_circle(2 * oracle::pi * l / Q2), p);
            Eigen::VectorXcd v(idx.size());
            for (int i = 0; i < idx.size(); ++i)
                v[i] = std::pow(w.w1, idx.at(i).alpha1) * std::pow(w.w2, idx.at(i).alpha2);
            ref += rule.w[j] / Q2 * v.conjugate() * v.transpose();
        }
    CHECK((G.entries - ref).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((G.entries - G.entries.adjoint()).norm() < 1e-13);
}

TEST_CASE("reproducing kernel: norm, evaluation bound, reproducing identity") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(-0.6, 0.6);
    for (int k = 0; k < 50; ++k) {
        const BidiskPoint a{{U(rng), U(rng)}, {U(rng), U(rng)}};
        // ||K_a||^2 = K_a(a) = product of geometric series
        const double ka = reproducing_kernel(a, a).real();
        CHECK(ka == doctest::Approx(oracle::geometric(std::norm(a.w1)) * oracle::geometric(std::norm(a.w2))));
        CHECK(evaluation_bound(a) == doctest::Approx(std::sqrt(ka)));
        // <f, K_a> = sum c_alpha a^alpha = f(a), and |f(a)| <= ||f|| ||K_a||
        const auto f = Poly2::random(6, 6, rng);
        cplx inner = 0;
        for (int i = 0; i <= 6; ++i)
            for (int j = 0; j <= 6; ++j) inner += f.c[i][j] * std::conj(std::pow(std::conj(a.w1), i) * std::pow(std::conj(a.w2), j));
        CHECK(std::abs(inner - f(a.w1, a.w2)) < 1e-12);
        CHECK(std::abs(f(a.w1, a.w2)) <= f.norm2() * evaluation_bound(a) + 1e-12);
    }
    CHECK_THROWS_AS(evaluation_bound({1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(reproducing_kernel({cplx(0, 1), 0.0}, {0.0, 0.0}), DomainError);
}

TEST_CASE("boundary samples") {
    const auto p = SymbolParams::make(0.5, 0.01, 2.5);
    const auto s = boundary_samples(p, TruncationSpec{4, 32});
    CHECK(s.values.size() == 32u * 32u);
    // nodal grid hits the cusp: Phi(1, 1) = (1, 1)
    CHECK(s.values[0].w1 == cplx(1));
    CHECK(s.values[0].w2 == cplx(1));
    const auto m = boundary_samples(p, 16, 8, GridPlacement::midpoint);
    CHECK(m.nodes[0].first == doctest::Approx(oracle::pi / 16));
}

TEST_CASE("Carleson windows") {
    CarlesonWindow w(1.0, 0.1);
    CHECK(w.contains(0.95));
    CHECK_FALSE(w.contains(0.85));
    CHECK_THROWS_AS(CarlesonWindow(0.5, 0.1), InvalidInput);
    CHECK_THROWS_AS(CarlesonWindow(1.0, 0.0), InvalidInput);
}

TEST_CASE("window integrals: ordering, monotonicity, normalization") {
    const auto p = SymbolParams::make(0.5, 0.0015, 2.42);
    const TruncationSpec spec{4, 64};
    double prev = INFINITY;
    for (int k : {5, 10, 20}) {
        const double h = 1.0 / k;
        const auto i0 = window_integral_I0(h);
        const auto i1 = window_integral_I(h, p, spec);
        CHECK(i0.value > 0);
        CHECK(i0.value < prev);
        // normalized torus measure with |w2| <= |w1| + small
        CHECK(i1.value <= i0.value / oracle::pi * (1 + 1e-9));
        // the window radius solves |chi(e^{it}) - 1| = h
        CHECK(std::abs(cusp(UnitDiskPoint::on_circle(i0.t_h)).chi3) == doctest::Approx(h).epsilon(1e-9));
        prev = i0.value;
    }
    const auto a = window_integral_I0<double>(0.1), b = window_integral_I0<long double>(0.1);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-8));
}

TEST_CASE("kernel and evaluation bound worked values") {
    CHECK(reproducing_kernel({0.0, 0.0}, {cplx(0.3, 0.1), cplx(-0.2, 0.5)}) == cplx(1));
    CHECK(reproducing_kernel({0.5, 0.5}, {0.5, 0.5}).real() == doctest::Approx(16.0 / 9.0));
    CHECK(evaluation_bound({0.0, 0.0}) == 1);
    CHECK(evaluation_bound({0.5, 0.0}) == doctest::Approx(2 / std::sqrt(3.0)));
    // <z1^2 z2, K_a> = a1^2 a2 at a = (0.3, 0.4)
    Poly2 f(2, 1);
    f.c[2][1] = 1;
    CHECK(std::abs(f(0.3, 0.4) - 0.036) < 1e-15);
}

TEST_CASE("first-coordinate mean is stable under grid doubling") {
    const auto p = SymbolParams::make(0.5, 0.0015, 2.42);
    auto mean = [&](int Q1) {
        const auto s = boundary_samples(p, Q1, 4, GridPlacement::midpoint);
        cplx m = 0;
        for (std::size_t i = 0; i < s.values.size(); ++i) m += s.weights[i] * s.values[i].w1;
        return m;
    };
    const cplx a = mean(16384), b = mean(32768);
    CHECK(std::abs(a - b) < 1e-6);
    // mean value property: the mean is chi(0)
    CHECK(std::abs(b - cusp(cplx(0)).chi) < 1e-6);
}

TEST_CASE("half-scaling symbol: HS norm 16/9 and the exact tail at D = 4") {
    const auto s = scaling_symbol(0.5, 0.5);
    const TruncationSpec spec{4, 64};
    CHECK(hs_norm_squared(s, spec).value == doctest::Approx(16.0 / 9.0).epsilon(1e-14));
    double kept = 0;
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b) kept += std::pow(0.25, a + b);
    CHECK(matrix_truncation_error(s, spec) == doctest::Approx(std::sqrt(16.0 / 9.0 - kept)).epsilon(1e-8));
    const auto M = assemble_matrix(s, spec);
    CHECK(M.entries(0, 0) == cplx(1));
}

TEST_CASE("paper symbol: column norms, Parseval, monotone tails, finite HS") {
    const auto p = SymbolParams::make(0.5, 0.0015, 2.42);
    const TruncationSpec spec{6, 256};
    const auto M = assemble_matrix(p, spec);
    const auto sym = paper_symbol(p);
    const auto rule = uniform_rule(256, GridPlacement::midpoint);
    const auto G = assemble_gram(sym, 6, rule);   // L2(m_Phi) Gram on the assembly grid
    for (Eigen::Index a = 0; a < M.entries.cols(); ++a)
        CHECK(M.entries.col(a).squaredNorm() <= G.entries(a, a).real() + 1e-8);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> N;
    for (int k = 0; k < 20; ++k) {
        Eigen::VectorXcd f = Eigen::VectorXcd::Zero(M.entries.cols());
        for (int i = 0; i < IndexSet(3).size(); ++i) f[i] = {N(rng), N(rng)};
        const double trunc = (M.entries * f).squaredNorm();
        const double full = (f.adjoint() * G.entries * f)(0, 0).real();
        CHECK(trunc <= full + 1e-8);
    }
    CHECK(std::abs(M.entries(0, 0) - 1.0) < 1e-10);
    double prev = INFINITY;
    for (int D : {2, 4, 8, 16}) {
        const double t = matrix_truncation_error(p, TruncationSpec{D, 256});
        CHECK(t < prev);
        prev = t;
    }
    // diagonal symbol: finite at two resolutions of the graded rule
    GradedMesh coarse, fine;
    coarse.levels = fine.levels / 2;
    const double h1 = hs_norm_squared(diagonal_skew_symbol(), graded_rule(coarse));
    const double h2 = hs_norm_squared(diagonal_skew_symbol(), graded_rule(fine));
    CHECK(std::isfinite(h2));
    CHECK(h1 == doctest::Approx(h2).epsilon(0.01));
    CHECK(window_integral_I0(1.0).value > 0);
    CHECK(std::isfinite(window_integral_I0(1.0).value));
}

TEST_CASE("I0(1) is stable under mesh refinement") {
    GradedMesh fine;
    fine.levels *= 2;
    fine.corner_levels *= 2;
    fine.order = 30;
    const double a = window_integral_I0(1.0).value, b = window_integral_I0(1.0, fine).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-3));
}
