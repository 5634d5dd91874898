#include "cuspop/symbols.hpp"

#include "cuspop/errors.hpp"

#include <cmath>

namespace cuspop {

namespace {

UnitDiskPoint shrink(const UnitDiskPoint& z, double r) {
    if (r == 1) return z;
    // 1 - r z = (1 - r) + r (1 - z)
    return UnitDiskPoint::from_offset(cplx(1 - r) + r * z.offset());
}

SkewSample paper_sample(const UnitDiskPoint& z, const SymbolParams& p, double r) {
    const auto tr = cusp(shrink(z, r));
    const double om = tr.one_minus_abs_chi * (1 + std::abs(tr.chi));
    const cplx b = p.c * phi_of_chi(tr, p.theta);
    if (p.g_kind == GKind::identity_in_z2) return {tr.chi, tr.chi, b * r, om, om};
    // g = 1: second coordinate chi + c phi(chi), no z2 dependence
    const cplx G = tr.chi + b;
    const double omG = om - 2 * std::real(std::conj(tr.chi) * b) - std::norm(b);
    return {tr.chi, G, 0.0, om, omG};
}

} // namespace

SkewSymbol paper_symbol(const SymbolParams& p) {
    p.validate(true);
    SkewSymbol s;
    s.name = "paper";
    s.params_hash = p.hash();
    if (p.g_kind == GKind::identity_in_z2) {
        s.base = SecondBase::equals_first;
    } else {
        s.base = SecondBase::general;
        s.h_zero = true;
    }
    s.eval = [p](const UnitDiskPoint& z) { return paper_sample(z, p, 1.0); };
    return s;
}

SkewSymbol dilated_paper_symbol(const SymbolParams& p, double r) {
    p.validate(true);
    if (!(r > 0 && r <= 1)) throw InvalidInput("dilation radius must lie in (0,1]");
    SkewSymbol s = paper_symbol(p);
    s.name = "paper_dilated";
    s.eval = [p, r](const UnitDiskPoint& z) { return paper_sample(z, p, r); };
    return s;
}

SkewSymbol diagonal_skew_symbol() {
    SkewSymbol s;
    s.name = "diagonal";
    s.base = SecondBase::equals_first;
    s.h_zero = true;
    s.eval = [](const UnitDiskPoint& z) {
        const auto tr = cusp(z);
        const double om = tr.one_minus_abs_chi * (1 + std::abs(tr.chi));
        return SkewSample{tr.chi, tr.chi, 0.0, om, om};
    };
    return s;
}

SkewSymbol scaling_symbol(double r1, double r2) {
    if (!(r1 >= 0 && r1 <= 1 && r2 >= 0 && r2 <= 1)) throw InvalidInput("scaling factors must lie in [0,1]");
    SkewSymbol s;
    s.name = "scaling";
    s.base = SecondBase::zero;
    s.h_zero = r2 == 0;
    s.eval = [r1, r2](const UnitDiskPoint& z) {
        return SkewSample{r1 * z.value(), 0.0, r2, 1 - r1 * r1, 1.0};
    };
    return s;
}

SkewSymbol identity_symbol() {
    SkewSymbol s = scaling_symbol(1, 1);
    s.name = "identity";
    return s;
}

DiskSymbol cusp_disk_symbol(double radius) {
    if (!(radius > 0 && radius <= 1)) throw InvalidInput("disk symbol radius must lie in (0,1]");
    DiskSymbol s;
    s.name = radius == 1 ? "cusp" : "cusp_shrunk";
    s.radius = radius;
    s.eval = [radius](const UnitDiskPoint& z) { return cusp(shrink(z, radius)).chi; };
    return s;
}

} // namespace cuspop
