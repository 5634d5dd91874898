#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspop/errors.hpp"
#include "cuspop/spectrum.hpp"
#include "oracles.hpp"

#include <random>

using namespace cuspop;

TEST_CASE("SVD agrees with the Gram eigenvalue oracle") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> N;
    std::uniform_int_distribution<int> S(1, 12);
    for (int k = 0; k < 30; ++k) {
        Eigen::MatrixXcd A(S(rng), S(rng));
        for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = {N(rng), N(rng)};
        const auto s = singular_values(A);
        const auto ref = oracle::gram_singular_values(A);
        REQUIRE(s.size() == std::min<std::size_t>(A.rows(), A.cols()));
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.values[i] == doctest::Approx(ref[i]).epsilon(1e-9));
        const auto g = gram_spectrum(A.adjoint() * A);
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(g.values[i] - s.values[i]) < 1e-9);
    }
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 0) = NAN;
    CHECK_THROWS_AS(singular_values(bad), InvalidInput);
}

TEST_CASE("approximation numbers carry the tail as an interval") {
    SingularSpectrum s{{3, 2, 1}, 0.5, "test"};
    const auto iv = approximation_numbers(s, 2);
    CHECK(iv.lower == 2);
    CHECK(iv.upper == 2.5);
    CHECK_THROWS_AS(approximation_numbers(s, 0), IndexError);
    CHECK_THROWS_AS(approximation_numbers(s, 4), IndexError);
}

TEST_CASE("decay fit recovers an exact exponential along n^2") {
    SingularSpectrum s;
    for (int m = 1; m <= 400; ++m) {
        const double n = std::sqrt(double(m));
        s.values.push_back(2 * std::exp(-0.7 * n));
    }
    s.tail_bound = 1e-12;
    const auto f = fit_decay(s, 2, {1, 20});
    CHECK(f.tau == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(f.logC == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(f.r_squared == doctest::Approx(1));
    CHECK(f.n_hi == 20);

    s.tail_bound = 0.05;   // only n with 2 e^{-0.7 n} > 0.5 survive: n = 1
    CHECK_THROWS_AS(fit_decay(s, 2, {1, 20}), InsufficientData);
}

TEST_CASE("beta report on a geometric sequence") {
    SingularSpectrum s;
    for (int m = 1; m <= 400; ++m) s.values.push_back(std::pow(0.5, std::sqrt(double(m))));
    const auto b = beta_estimate(s, 2, {1, 20});
    CHECK(b.beta_minus == doctest::Approx(0.5));
    CHECK(b.beta_plus == doctest::Approx(0.5));
    CHECK(b.n_lo == 10);
    CHECK(b.n_hi == 20);
    CHECK_THROWS_AS(beta_estimate(s, 2, {30, 40}), RangeError);
}

TEST_CASE("direct sums: singular values merge and subadditivity holds") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> N;
    Eigen::MatrixXcd A(5, 5), B(4, 4);
    for (Eigen::Index i = 0; i < A.size(); ++i) A.data()[i] = {N(rng), N(rng)};
    for (Eigen::Index i = 0; i < B.size(); ++i) B.data()[i] = {N(rng), N(rng)};
    const auto s = singular_values(direct_sum(A, B));
    auto sa = singular_values(A).values, sb = singular_values(B).values;
    sa.insert(sa.end(), sb.begin(), sb.end());
    std::sort(sa.begin(), sa.end(), std::greater<>());
    for (std::size_t i = 0; i < sa.size(); ++i) CHECK(s.values[i] == doctest::Approx(sa[i]));
    const auto a = singular_values(A).values, b = singular_values(B).values;
    for (int m = 1; m <= 5; ++m)
        for (int n = 1; n <= 4; ++n) CHECK(s.values[m + n - 2] <= a[m - 1] + b[n - 1] + 1e-12);
}

TEST_CASE("split Gram: partition identity and region masses") {
    const auto p = SymbolParams::make(0.5, 0.0015, 2.42);
    const auto split = SplitSpec::make(100, p);
    CHECK(split.lambda < split.r_n);
    // the outer regions only start at boundary angles ~1e-55, hence the deep mesh
    const auto mesh = split_mesh();
    const auto g = split_gram(paper_symbol(p), 3, split, graded_rule(mesh), 16);
    const Eigen::MatrixXcd sum = g.G1 + g.G2 + g.G3;
    CHECK((sum - g.full).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(g.mass1 + g.mass2 + g.mass3 == doctest::Approx(1).epsilon(1e-12));
    CHECK(g.mass3 > 0);
    CHECK(g.mass2 > 0);
    // outer-only gives the same G3
    const auto o = split_gram(paper_symbol(p), 3, split, graded_rule(mesh), 16, true);
    CHECK((o.G3 - g.G3).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(SplitSpec::make(10, p), InvalidInput);   // r_n below lambda
}
