#pragma once

#include <complex>
#include <random>
#include <vector>

namespace cuspop {

using cplx = std::complex<double>;

// Dense one-variable polynomial, c[i] the coefficient of z^i.
struct Poly1 {
    std::vector<cplx> c;
    cplx operator()(cplx z) const;  // Horner
    int degree() const { return static_cast<int>(c.size()) - 1; }
    double norm2() const;           // coefficient l2 norm
    Poly1 derivative(int k = 1) const;
    friend Poly1 operator*(const Poly1& a, const Poly1& b);
    static Poly1 linear_power(cplx a, int n);  // (z - a)^n
};

// Dense two-variable polynomial, c[i][j] the coefficient of z1^i z2^j.
struct Poly2 {
    std::vector<std::vector<cplx>> c;
    Poly2() = default;
    Poly2(int d1, int d2);
    int deg1() const { return static_cast<int>(c.size()) - 1; }
    int deg2() const { return c.empty() ? -1 : static_cast<int>(c[0].size()) - 1; }
    cplx operator()(cplx z1, cplx z2) const;
    double norm2() const;           // the H^2(bidisk) norm
    Poly2 d2(int k) const;          // (d/dz2)^k
    Poly1 diagonal() const;         // z -> f(z, z)
    static Poly2 tensor(const Poly1& a, const Poly1& b);  // a(z1) b(z2)
    static Poly2 random(int d1, int d2, std::mt19937_64& rng);  // gaussian coefficients, unit norm
};

} // namespace cuspop
