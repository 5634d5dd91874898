#pragma once

#include "cuspop/maps.hpp"

#include <functional>
#include <string>

namespace cuspop {

// Boundary data of a skew-product symbol
//   Phi(z1, z2) = (F(z1), G(z1) + H(z1) z2)
// which covers the perturbed diagonal map, the diagonal map, scalings and
// the identity.  om_F2 / om_G2 are 1 - |F|^2 and 1 - |G|^2 evaluated
// without cancellation where the symbol allows it.
struct SkewSample {
    cplx F, G, H;
    double om_F2, om_G2;
};

enum class SecondBase { zero, equals_first, general };

struct SkewSymbol {
    std::string name;
    std::function<SkewSample(const UnitDiskPoint&)> eval;
    SecondBase base = SecondBase::general;
    bool h_zero = false;
    std::uint64_t params_hash = 0;
};

SkewSymbol paper_symbol(const SymbolParams& p);
SkewSymbol diagonal_skew_symbol();
SkewSymbol scaling_symbol(double r1, double r2);
SkewSymbol identity_symbol();
// Phi(r z1, r z2) for the default symbol.
SkewSymbol dilated_paper_symbol(const SymbolParams& p, double r);

// One-variable symbol on the disk.
struct DiskSymbol {
    std::string name;
    std::function<cplx(const UnitDiskPoint&)> eval;
    double radius = 1;   // chi(radius * z)
};

DiskSymbol cusp_disk_symbol(double radius = 1.0);

} // namespace cuspop
