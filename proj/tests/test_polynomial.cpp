#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspop/polynomial.hpp"

#include <cmath>

using namespace cuspop;

TEST_CASE("one variable") {
    Poly1 p{{1.0, 2.0, 3.0}};
    CHECK(p(cplx(2)) == cplx(17));
    CHECK(p.norm2() == doctest::Approx(std::sqrt(14.0)));
    CHECK(p.derivative()(cplx(1)) == cplx(8));
    CHECK(p.derivative(2).c == std::vector<cplx>{6.0});
    CHECK(p.derivative(5).c.size() <= 1);
    // (z - a)^3 has binomial coefficients
    const cplx a(0.3, -0.2);
    const auto q = Poly1::linear_power(a, 3);
    CHECK(q.degree() == 3);
    CHECK(std::abs(q(a)) < 1e-15);
    CHECK(std::abs(q(cplx(1, 1)) - std::pow(cplx(1, 1) - a, 3)) < 1e-13);
    const auto pq = p * q;
    CHECK(std::abs(pq(cplx(0.5)) - p(cplx(0.5)) * q(cplx(0.5))) < 1e-13);
}

TEST_CASE("two variables") {
    std::mt19937_64 rng(1);
    const auto f = Poly2::random(3, 4, rng);
    CHECK(f.norm2() == doctest::Approx(1).epsilon(1e-14));
    CHECK(f.deg1() == 3);
    CHECK(f.deg2() == 4);
    const cplx z(0.3, 0.4);
    // diagonal restriction
    CHECK(std::abs(f.diagonal()(z) - f(z, z)) < 1e-13);
    // d/dz2 by central difference
    const double h = 1e-5;
    const cplx fd = (f(z, z + h) - f(z, z - h)) / (2 * h);
    CHECK(std::abs(f.d2(1)(z, z) - fd) < 1e-8);
    // tensor
    Poly1 a{{1.0, 1.0}}, b{{0.0, 2.0}};
    const auto t = Poly2::tensor(a, b);
    CHECK(t(cplx(2), cplx(3)) == cplx(18));
    CHECK(t.norm2() == doctest::Approx(std::sqrt(8.0)));
}
