#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspop/contrast.hpp"
#include "cuspop/errors.hpp"
#include "oracles.hpp"

using namespace cuspop;

TEST_CASE("Taylor coefficients match the closed form through FFT on a small circle") {
    const auto a = cusp_taylor_coefficients(12);
    CHECK(a[0] == doctest::Approx(oracle::chi_closed(0).real()).epsilon(1e-15));
    // b-th coefficient = r^-b (1/Q) sum chi(r e^{it}) e^{-ibt}
    const double r = 0.4;
    const int Q = 256;
    for (int b = 0; b < 12; ++b) {
        oracle::cplx s = 0;
        for (int j = 0; j < Q; ++j) {
            const double t = 2 * oracle::pi * j / Q;
            s += oracle::chi_closed(std::polar(r, t)) * std::polar(1.0, -b * t);
        }
        s /= Q * std::pow(r, b);
        CHECK(std::abs(s - a[b]) < 1e-11);
    }
    CHECK_THROWS_AS(cusp_taylor_coefficients(0), InvalidInput);
}

TEST_CASE("one-variable scaling has the geometric spectrum") {
    DiskSymbol s;
    s.name = "scale";
    s.eval = [](const UnitDiskPoint& z) { return 0.7 * z.value(); };
    const auto sp = one_dim_contrast({32, 256}, s);
    for (int n = 1; n <= 20; ++n) CHECK(sp.values[n - 1] == doctest::Approx(std::pow(0.7, n - 1)).epsilon(1e-12));
    // tail^2 = sum_{m > 32} 0.49^m
    CHECK(sp.tail_bound == doctest::Approx(std::sqrt(std::pow(0.49, 33) / 0.51)).epsilon(1e-4));
}

TEST_CASE("three routes agree on the leading singular values") {
    // FFT and graded routes for chi
    const auto fft = one_dim_contrast({64, 4096});
    GradedMesh mesh;
    const auto gr = one_dim_contrast_graded(64, mesh);
    for (int n = 1; n <= 8; ++n) CHECK(fft.values[n - 1] == doctest::Approx(gr.values[n - 1]).epsilon(1e-3));
    // graded and Taylor routes for chi(z/2)
    const auto gs = one_dim_contrast_graded(64, mesh, cusp_disk_symbol(0.5));
    const auto ts = shrunk_contrast_taylor(0.5, 64, 100);
    for (int n = 1; n <= 10; ++n) CHECK(ts.values[n - 1] == doctest::Approx(gs.values[n - 1]).epsilon(1e-8));
    CHECK(ts.tail_bound < 1e-15);
    CHECK_THROWS_AS(shrunk_contrast_taylor(1.0, 8, 8), InvalidInput);
}
