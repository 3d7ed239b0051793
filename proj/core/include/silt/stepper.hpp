#pragma once

#include <vector>

#include "silt/bedload.hpp"
#include "silt/grid.hpp"
#include "silt/physics.hpp"

namespace silt {

// A field extended by a one-cell ghost frame on every side.  The stepping
// kernels consume halo-complete padded fields: ghosts must have been filled
// (from boundary conditions or a neighbouring subdomain) before each step.
struct PaddedField {
    Grid grid;                     // interior dimensions
    std::vector<FlowState> cells;  // (nx + 2) * (ny + 2), row-major, i fastest

    PaddedField() = default;
    explicit PaddedField(const Grid& g)
        : grid(g),
          cells(static_cast<std::size_t>(g.nx + 2) * (g.ny + 2)) {}

    FlowState& at(int i, int j = 0) {
        return cells[static_cast<std::size_t>(j + 1) * (grid.nx + 2) + (i + 1)];
    }
    const FlowState& at(int i, int j = 0) const {
        return cells[static_cast<std::size_t>(j + 1) * (grid.nx + 2) + (i + 1)];
    }

    static PaddedField from_field(const Field& f);
    Field interior() const;
};

// Largest stable time step: cfl times the minimum over wet cells of
// dx / max(|u| + sqrt(g h), |u| + sqrt(u^2 + g dq_b/du)) (and the y analogue
// in 2D).  The per-cell celerities here are the raw bounds, without the
// interface safety factor.  Throws if no wet cell exists.
double cfl_dt(const Field& f, const BedloadLaw& law, const Physics& phys,
              double cfl);
double cfl_dt(const PaddedField& f, const BedloadLaw& law, const Physics& phys,
              double cfl);

// One first-order Godunov step on a halo-complete padded field.  Every
// interface problem is solved once; depth and bed updates telescope exactly,
// momentum receives the per-interface topography exchange terms.  Throws
// std::runtime_error if a depth turns negative (CFL or celerity violation).
void step_1d(PaddedField& f, const BedloadLaw& law, const Physics& phys,
             double dt, double safety);

// Unsplit 2D step: x- and y-face problems are both solved on the time-level-n
// state and applied together.  Transverse momentum is advected passively,
// upwinded by the sign of the depth flux.
void step_2d(PaddedField& f, const BedloadLaw& law, const Physics& phys,
             double dt, double safety);

}  // namespace silt
