#pragma once

#include "cuspop/maps.hpp"

#include <vector>

namespace cuspop {

// Rule on the unit circle for the normalized measure dt/2pi.
struct BoundaryRule {
    std::vector<double> t;       // angles
    std::vector<double> w;       // weights, sum 1
    std::vector<UnitDiskPoint> pts;
    std::size_t size() const { return t.size(); }
};

enum class GridPlacement { nodal, midpoint };

// t_j = 2 pi j/Q (nodal, contains t = 0) or 2 pi (j + 1/2)/Q (midpoint).
BoundaryRule uniform_rule(int Q, GridPlacement placement);

struct GradedMesh {
    int levels = 60;         // geometric panels toward the cusp t = 0
    int corner_levels = 40;  // geometric panels toward each corner t = +-pi/2
    int order = 20;          // Gauss-Legendre points per panel (8, 16, 20, 24 or 30)
};

// Composite Gauss rule on [-pi, pi], graded at t = 0 and at t = +-pi/2
// (the boundary points whose images are the cusp and the two lens corners).
BoundaryRule graded_rule(const GradedMesh& mesh);

// Composite Gauss-Legendre on [a, b] with panel edges given; nodes/weights appended.
void gauss_panels(const std::vector<double>& edges, int order, std::vector<double>& x, std::vector<double>& w);

} // namespace cuspop
