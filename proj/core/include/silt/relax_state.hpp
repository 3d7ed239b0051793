#pragma once

#include "silt/bedload.hpp"
#include "silt/grid.hpp"
#include "silt/physics.hpp"

namespace silt {

enum class Axis { X, Y };

// One side of an interface problem in relaxation variables.  `pi` relaxes the
// hydrostatic pressure g h^2 / 2 and `omega` the bedload rate; at equilibrium
// they equal those closures exactly.
struct RelaxState {
    double h = 0;      // depth
    double hu = 0;     // normal discharge
    double pi = 0;     // relaxed pressure
    double z = 0;      // bed elevation
    double omega = 0;  // relaxed bedload rate

    double u(double h_dry) const { return h > h_dry ? hu / h : 0.0; }
};

// Project a cell onto the equilibrium manifold for a face of the given axis:
// the normal/transverse velocity roles swap between X and Y faces, and omega
// uses the planar law's component along the face normal.
RelaxState equilibrate(const FlowState& cell, const BedloadLaw& law,
                       const Physics& phys, Axis axis = Axis::X);

// Sub-characteristic celerities for one interface.  `a` bounds the fluid
// (pressure) waves, `b` the solid (bed) waves; both are shared by the two
// sides and scaled by `safety` > 1.
struct CelerityPair {
    double a = 0;
    double b = 0;
};

// a >= max_sides H sqrt(gH), b >= max_sides sqrt((Hu)^2 + g H^2 dq_b/du),
// each times `safety`.  If the law moves nothing on either side (rate and
// velocity-derivative both exactly zero) b is forced to 0 so the bed stays
// bit-identical; a dry interface returns {0, 0} and is skipped entirely.
CelerityPair celerity_bounds(const RelaxState& left, const RelaxState& right,
                             const BedloadLaw& law, const Physics& phys,
                             double safety);

// Variant for planar faces where the transverse velocity enters the normal
// derivative of the bedload rate.
CelerityPair celerity_bounds(const RelaxState& left, const RelaxState& right,
                             double ut_left, double ut_right,
                             const BedloadLaw& law, const Physics& phys,
                             double safety);

}  // namespace silt
