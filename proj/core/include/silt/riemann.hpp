#pragma once

#include <array>

#include "silt/relax_state.hpp"

namespace silt {

// Exact solution of the interface problem for the relaxation system.  All
// five waves are linearly degenerate (contact discontinuities), so the fan is
// six constant regions separated by the five wave speeds.  Depth and bed
// fluxes are single-valued at the interface; the momentum flux carries a
// topography exchange term that differs between the two adjacent cells, which
// is how the non-conservative g h dz/dx coupling enters the update.
struct InterfaceSolution {
    // Regions left to right: [0] = left input, [5] = right input.
    std::array<RelaxState, 6> region{};
    std::array<double, 5> speed{};  // wave speeds, non-decreasing

    double flux_h = 0;       // depth flux (single-valued)
    double flux_z = 0;       // bed flux (single-valued)
    double flux_hu_left = 0;   // momentum flux seen by the left cell
    double flux_hu_right = 0;  // momentum flux seen by the right cell

    CelerityPair celerity;   // effective pair after any local enlargement
    int enlargements = 0;    // times the celerities were doubled for validity
};

// Solve the interface problem between two wet relaxation states.  `cel` must
// satisfy the celerity bounds; the solver may enlarge it locally (recorded in
// the result) when the star region would otherwise lose positivity.  Throws
// std::runtime_error if no valid fan is found after bounded enlargement.
InterfaceSolution interface_riemann(const RelaxState& left,
                                    const RelaxState& right,
                                    const CelerityPair& cel, double gravity);

}  // namespace silt
