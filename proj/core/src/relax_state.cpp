#include "silt/relax_state.hpp"

#include <algorithm>
#include <cmath>

namespace silt {

RelaxState equilibrate(const FlowState& cell, const BedloadLaw& law,
                       const Physics& phys, Axis axis) {
    const Primitives p = primitives(cell, phys.h_dry);
    const double un = (axis == Axis::X) ? p.u : p.v;
    const double ut = (axis == Axis::X) ? p.v : p.u;

    RelaxState s;
    s.h = cell.h;
    s.hu = cell.h * un;
    s.pi = 0.5 * phys.gravity * cell.h * cell.h;
    s.z = cell.zb;
    s.omega = normal_flux(law, cell.h, un, ut, phys.gravity);
    return s;
}

namespace {

CelerityPair bounds_impl(const RelaxState& l, const RelaxState& r,
                         double ut_l, double ut_r, const BedloadLaw& law,
                         const Physics& phys, double safety) {
    const bool wet_l = l.h > phys.h_dry;
    const bool wet_r = r.h > phys.h_dry;
    CelerityPair c;
    if (!wet_l && !wet_r) return c;  // inert interface

    const double g = phys.gravity;
    double a = 0, b2 = 0;
    bool still = true;  // stays true only if neither side moves any sediment
    for (const auto* s : {&l, &r}) {
        if (!(s->h > phys.h_dry)) continue;
        const double un = s->u(phys.h_dry);
        const double ut = (s == &l) ? ut_l : ut_r;
        a = std::max(a, s->h * std::sqrt(g * s->h));
        const double dq = normal_flux_derivative(law, s->h, un, ut, g);
        b2 = std::max(b2, s->hu * s->hu + g * s->h * s->h * dq);
        const double speed = std::hypot(un, ut);
        if (dimensional_flux(law, s->h, speed, g) != 0.0 || dq != 0.0 ||
            s->omega != 0.0)
            still = false;
    }
    c.a = safety * a;
    // A transport-free interface gets b = 0: the solver then freezes the bed
    // exactly instead of advecting roundoff through near-zero solid waves.
    c.b = still ? 0.0 : safety * std::sqrt(b2);
    return c;
}

}  // namespace

CelerityPair celerity_bounds(const RelaxState& left, const RelaxState& right,
                             const BedloadLaw& law, const Physics& phys,
                             double safety) {
    return bounds_impl(left, right, 0.0, 0.0, law, phys, safety);
}

CelerityPair celerity_bounds(const RelaxState& left, const RelaxState& right,
                             double ut_left, double ut_right,
                             const BedloadLaw& law, const Physics& phys,
                             double safety) {
    return bounds_impl(left, right, ut_left, ut_right, law, phys, safety);
}

}  // namespace silt
