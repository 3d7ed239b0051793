#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "silt/bedload.hpp"
#include "silt/grid.hpp"
#include "silt/physics.hpp"
#include "silt/stepper.hpp"

namespace silt {

enum class Side : int { West = 0, East = 1, South = 2, North = 3 };

enum class BcType {
    Inflow,       // discharge imposed; depth imposed too when supercritical
    FreeOutflow,  // zero-gradient in every variable
    Wall,         // reflective: normal momentum negated
    Periodic,     // wraps to the opposite side (must be set on both)
};

struct BoundarySpec {
    BcType type = BcType::FreeOutflow;
    double q0 = 0;             // imposed normal discharge (Inflow)
    double h0 = 0;             // imposed depth (supercritical Inflow)
    bool supercritical = false;

    static BoundarySpec inflow_subcritical(double q0);
    static BoundarySpec inflow_supercritical(double q0, double h0);
    static BoundarySpec outflow() { return {}; }
    static BoundarySpec wall();
    static BoundarySpec periodic();
};

// A ready-to-run problem: grid, initial data, closure, boundaries, run length.
struct Scenario {
    std::string name;
    Grid grid;
    Field initial;
    BedloadLaw law = BedloadLaw::grass(0.0);
    Physics phys;
    std::array<BoundarySpec, 4> bc{};  // indexed by Side
    double t_end = 0;
    double cfl = 0.5;
    double safety = 1.05;
    int choked_cells = 0;  // cells initialised at critical depth (see below)
};

// Fill the full ghost frame of a serial (single-block) padded field from the
// scenario's boundary conditions; periodic sides wrap around the whole grid.
void apply_bcs(PaddedField& f, const std::array<BoundarySpec, 4>& bc);

// Fill the ghost strip of one side only (used by subdomains whose other sides
// are interior).  `type == Periodic` is not valid here: parallel runs route
// periodic wrapping through the neighbour topology instead.
void apply_bc_side(PaddedField& f, Side side, const BoundarySpec& spec);

// Steady supercritical free-surface profile over a given bed: solves the
// specific-head cubic h^3 - (H0 - zb) h^2 + q0^2/(2g) = 0 for the root below
// critical depth.  Cells whose bed rises above the available head have no
// supercritical solution ("choked"); they fall back to critical depth and are
// flagged.  h0 itself must be supercritical.
struct BernoulliProfile {
    std::vector<double> h;
    std::vector<std::uint8_t> choked;
    int choked_count = 0;
    double head = 0;            // H0 = q0^2/(2 g h0^2) + h0 + zb_ref
    double critical_depth = 0;  // (q0^2 / g)^{1/3}
};
BernoulliProfile bernoulli_supercritical_profile(double q0, double h0,
                                                 double zb_ref,
                                                 const std::vector<double>& zb,
                                                 double gravity);

// Bundled experiments.  The Physics argument matters where gravity enters the
// initial data (the antidune free-surface profile); it is copied into the
// scenario either way.
//
// Subcritical flow over a sine-squared bump on [300, 500] of a 1000 m reach;
// the bump migrates downstream (dune).  Strong coupling: Grass a_g = 1.
Scenario build_dune_1d(int cells = 2000, const Physics& phys = {});
//
// Supercritical flow over a parabolic bump on [8, 12] of a 24 m flume; the
// bump migrates upstream (antidune).  Weak coupling: Grass a_g = 0.001.
Scenario build_antidune_1d(int cells = 2400, const Physics& phys = {});
//
// Planar version of the dune on a 1000 m x 1000 m basin with an off-centre
// sine-squared mound; the mound deforms into a crescent while migrating.
// t_end <= 0 picks the coupling-matched default: 500 s for strong coupling,
// 1000 s for weak (a_g < 0.5) so the slower bed still moves visibly.
Scenario build_bump_2d(int cells_x, int cells_y, double a_g = 1.0,
                       double t_end = -1.0, const Physics& phys = {});

// Scenario lookup by name ("dune1d", "antidune1d", "bump2d").  cells_y is
// ignored for 1D scenarios; non-positive cell counts select the default.
Scenario build_scenario(const std::string& name, int cells_x = 0,
                        int cells_y = 0, const Physics& phys = {});

}  // namespace silt
