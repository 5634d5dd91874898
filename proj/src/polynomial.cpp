#include "cuspop/polynomial.hpp"

#include "cuspop/errors.hpp"

#include <cmath>

namespace cuspop {

cplx Poly1::operator()(cplx z) const {
    cplx r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
    return r;
}

double Poly1::norm2() const {
    double s = 0;
    for (const auto& x : c) s += std::norm(x);
    return std::sqrt(s);
}

Poly1 Poly1::derivative(int k) const {
    if (k < 0) throw InvalidInput("derivative order must be >= 0");
    Poly1 r = *this;
    for (int t = 0; t < k; ++t) {
        if (r.c.size() <= 1) return Poly1{{0.0}};
        Poly1 d;
        d.c.resize(r.c.size() - 1);
        for (std::size_t i = 1; i < r.c.size(); ++i) d.c[i - 1] = static_cast<double>(i) * r.c[i];
        r = std::move(d);
    }
    return r;
}

Poly1 operator*(const Poly1& a, const Poly1& b) {
    if (a.c.empty() || b.c.empty()) return Poly1{};
    Poly1 r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

Poly1 Poly1::linear_power(cplx a, int n) {
    Poly1 r{{1.0}};
    const Poly1 lin{{-a, 1.0}};
    for (int i = 0; i < n; ++i) r = r * lin;
    return r;
}

Poly2::Poly2(int d1, int d2) {
    if (d1 < 0 || d2 < 0) throw InvalidInput("polynomial degrees must be >= 0");
    c.assign(d1 + 1, std::vector<cplx>(d2 + 1, 0.0));
}

cplx Poly2::operator()(cplx z1, cplx z2) const {
    cplx r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        cplx row = 0;
        for (auto jt = it->rbegin(); jt != it->rend(); ++jt) row = row * z2 + *jt;
        r = r * z1 + row;
    }
    return r;
}

double Poly2::norm2() const {
    double s = 0;
    for (const auto& row : c)
        for (const auto& x : row) s += std::norm(x);
    return std::sqrt(s);
}

Poly2 Poly2::d2(int k) const {
    if (k < 0) throw InvalidInput("derivative order must be >= 0");
    const int n1 = deg1(), n2 = deg2();
    if (k > n2) return Poly2(std::max(n1, 0), 0);
    Poly2 r(n1, n2 - k);
    for (int i = 0; i <= n1; ++i)
        for (int j = k; j <= n2; ++j) {
            double f = 1;
            for (int t = 0; t < k; ++t) f *= j - t;
            r.c[i][j - k] = f * c[i][j];
        }
    return r;
}

Poly1 Poly2::diagonal() const {
    Poly1 r;
    if (c.empty()) return r;
    r.c.assign(deg1() + deg2() + 1, 0.0);
    for (int i = 0; i <= deg1(); ++i)
        for (int j = 0; j <= deg2(); ++j) r.c[i + j] += c[i][j];
    return r;
}

Poly2 Poly2::tensor(const Poly1& a, const Poly1& b) {
    Poly2 r(a.degree(), b.degree());
    for (int i = 0; i <= a.degree(); ++i)
        for (int j = 0; j <= b.degree(); ++j) r.c[i][j] = a.c[i] * b.c[j];
    return r;
}

Poly2 Poly2::random(int d1, int d2, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Poly2 r(d1, d2);
    for (auto& row : r.c)
        for (auto& x : row) x = {g(rng), g(rng)};
    const double n = r.norm2();
    for (auto& row : r.c)
        for (auto& x : row) x /= n;
    return r;
}

} // namespace cuspop
