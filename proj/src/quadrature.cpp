#include "cuspop/quadrature.hpp"

#include "cuspop/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace cuspop {

namespace {

template <unsigned N>
void panel(double a, double b, std::vector<double>& x, std::vector<double>& w) {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    const double m = (a + b) / 2, h = (b - a) / 2;
    // boost stores the non-negative half; the zero node appears once for odd N
    for (std::size_t i = 0; i < ab.size(); ++i) {
        if (ab[i] == 0) {
            x.push_back(m);
            w.push_back(h * wt[i]);
            continue;
        }
        x.push_back(m - h * ab[i]);
        w.push_back(h * wt[i]);
        x.push_back(m + h * ab[i]);
        w.push_back(h * wt[i]);
    }
}

} // namespace

void gauss_panels(const std::vector<double>& edges, int order, std::vector<double>& x, std::vector<double>& w) {
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double a = edges[k], b = edges[k + 1];
        if (!(b > a)) continue;
        switch (order) {
        case 8: panel<8>(a, b, x, w); break;
        case 16: panel<16>(a, b, x, w); break;
        case 20: panel<20>(a, b, x, w); break;
        case 24: panel<24>(a, b, x, w); break;
        case 30: panel<30>(a, b, x, w); break;
        default: throw ConfigError("gauss order must be one of 8, 16, 20, 24, 30");
        }
    }
}

BoundaryRule uniform_rule(int Q, GridPlacement placement) {
    if (Q <= 0) throw ConfigError("uniform rule needs Q > 0");
    BoundaryRule r;
    r.t.resize(Q);
    r.w.assign(Q, 1.0 / Q);
    r.pts.reserve(Q);
    const double shift = placement == GridPlacement::midpoint ? 0.5 : 0.0;
    for (int j = 0; j < Q; ++j) {
        r.t[j] = 2 * std::numbers::pi * (j + shift) / Q;
        r.pts.push_back(UnitDiskPoint::on_circle(r.t[j]));
    }
    return r;
}

BoundaryRule graded_rule(const GradedMesh& mesh) {
    if (mesh.levels < 1 || mesh.corner_levels < 1) throw ConfigError("graded mesh needs positive levels");
    constexpr double pi = std::numbers::pi;
    std::vector<double> e;
    e.push_back(0);
    for (int k = mesh.levels; k >= 0; --k) e.push_back(pi / 4 * std::ldexp(1.0, -k));
    for (int k = 1; k <= mesh.corner_levels; ++k) e.push_back(pi / 2 - pi / 4 * std::ldexp(1.0, -k));
    e.push_back(pi / 2);
    for (int k = mesh.corner_levels; k >= 1; --k) e.push_back(pi / 2 + pi / 4 * std::ldexp(1.0, -k));
    for (int k = 0; k <= 4; ++k) e.push_back(3 * pi / 4 + k * pi / 16);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());

    std::vector<double> x, w;
    gauss_panels(e, mesh.order, x, w);
    BoundaryRule r;
    const std::size_t n = x.size();
    r.t.reserve(2 * n);
    r.w.reserve(2 * n);
    for (std::size_t i = n; i-- > 0;) {
        r.t.push_back(-x[i]);
        r.w.push_back(w[i] / (2 * pi));
    }
    for (std::size_t i = 0; i < n; ++i) {
        r.t.push_back(x[i]);
        r.w.push_back(w[i] / (2 * pi));
    }
    r.pts.reserve(r.t.size());
    for (double t : r.t) r.pts.push_back(UnitDiskPoint::on_circle(t));
    return r;
}

} // namespace cuspop
