#pragma once

#include <functional>
#include <vector>

#include "silt/scenarios.hpp"
#include "silt/stepper.hpp"

namespace silt {

// Cartesian worker layout, rank = ry * px + rx.  Periodic axes wrap the
// neighbour relation so periodic boundaries are pure halo traffic.
struct Topology {
    int px = 1, py = 1;
    bool periodic_x = false, periodic_y = false;

    int size() const { return px * py; }
    int rank_of(int rx, int ry) const { return ry * px + rx; }

    // Neighbour rank one step (dx, dy) away, dx/dy in {-1, 0, 1};
    // -1 when the step leaves a non-periodic edge.
    int neighbor(int rank, int dx, int dy) const;
};

// One worker's block: global offset plus a ghost-framed local field.
struct Subdomain {
    int rank = 0;
    int rx = 0, ry = 0;   // topology coordinates
    int i0 = 0, j0 = 0;   // global index of local cell (0, 0)
    PaddedField field;
};

// Block partition of a field: per-axis counts differ by at most one, with the
// remainder cells going to the lowest coordinates.  Every worker must own at
// least one cell per axis.  1D grids require py == 1.
std::vector<Subdomain> partition(const Field& global, const Topology& topo);

// Reassemble the global field from subdomain interiors.
Field gather(const std::vector<Subdomain>& parts, const Topology& topo,
             const Grid& global_grid);

// Fill every subdomain's ghost frame from its neighbours' interior edges
// (pull style).  Physical (neighbourless) sides are left untouched.  Corner
// ghosts are exchanged only when `corners` is set; the first-order face
// solves never read them, so this must not change any result.
void halo_exchange(std::vector<Subdomain>& parts, const Topology& topo,
                   bool corners);

// Deterministic reduction of per-worker time-step candidates.
double global_dt(const std::vector<double>& locals);

struct WorkerTiming {
    int rank = 0;
    long steps = 0;
    double compute_seconds = 0;   // local CFL + stepping
    double exchange_seconds = 0;  // ghost fill, gathers, synchronization
};

struct RunOptions {
    double t_end = -1;    // < 0: scenario value
    double cfl = -1;      // < 0: scenario value
    double safety = -1;   // < 0: scenario value
    long max_steps = -1;  // < 0: no step limit
    // Times at which the global field is sampled exactly (the step is
    // clipped to land on them).  Pass 0 to sample the initial state.
    std::vector<double> snapshot_times;
    std::function<void(double, const Field&)> on_snapshot;
    bool exchange_corners = true;
};

struct RunResult {
    Field final_field;
    double time = 0;
    long steps = 0;
    std::vector<WorkerTiming> timing;
    double wall_seconds = 0;
};

// Reference single-block driver (no threads, no decomposition).
RunResult run_serial(const Scenario& sc, const RunOptions& opt = {});

// SPMD-over-threads driver: px * py workers step their blocks in lockstep,
// exchanging one-cell halos and agreeing on a global dt every step.  Any
// worker layout produces the same fields as run_serial, bit for bit.
RunResult run_parallel(const Scenario& sc, int px, int py,
                       const RunOptions& opt = {});

}  // namespace silt
