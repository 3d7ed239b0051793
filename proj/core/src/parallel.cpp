#include "silt/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <barrier>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

namespace silt {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Per-axis block decomposition: remainder cells go to the lowest coordinates,
// so counts differ by at most one.
void block_range(int n, int parts, int r, int* offset, int* count) {
    const int base = n / parts;
    const int rem = n % parts;
    *count = base + (r < rem ? 1 : 0);
    *offset = r * base + std::min(r, rem);
}

Grid local_grid(const Grid& global, int ni, int nj) {
    // Keep dx/dy bit-identical to the global grid; only the counts change.
    Grid g = global;
    g.nx = ni;
    g.ny = nj;
    g.length_x = ni * global.dx;
    g.length_y = (global.dim == 2) ? nj * global.dy : 0.0;
    return g;
}

// Pull one subdomain's ghost strips from its neighbours' interiors.
void pull_halo(Subdomain& sd, const std::vector<Subdomain>& all,
               const Topology& topo, bool corners) {
    const int nx = sd.field.grid.nx;
    const int ny = sd.field.grid.ny;

    if (int nb = topo.neighbor(sd.rank, -1, 0); nb >= 0) {
        const PaddedField& src = all[nb].field;
        for (int j = 0; j < ny; ++j) sd.field.at(-1, j) = src.at(src.grid.nx - 1, j);
    }
    if (int nb = topo.neighbor(sd.rank, +1, 0); nb >= 0) {
        const PaddedField& src = all[nb].field;
        for (int j = 0; j < ny; ++j) sd.field.at(nx, j) = src.at(0, j);
    }
    if (sd.field.grid.dim == 2) {
        if (int nb = topo.neighbor(sd.rank, 0, -1); nb >= 0) {
            const PaddedField& src = all[nb].field;
            for (int i = 0; i < nx; ++i) sd.field.at(i, -1) = src.at(i, src.grid.ny - 1);
        }
        if (int nb = topo.neighbor(sd.rank, 0, +1); nb >= 0) {
            const PaddedField& src = all[nb].field;
            for (int i = 0; i < nx; ++i) sd.field.at(i, ny) = src.at(i, 0);
        }
        if (corners) {
            if (int nb = topo.neighbor(sd.rank, -1, -1); nb >= 0) {
                const PaddedField& src = all[nb].field;
                sd.field.at(-1, -1) = src.at(src.grid.nx - 1, src.grid.ny - 1);
            }
            if (int nb = topo.neighbor(sd.rank, +1, -1); nb >= 0) {
                const PaddedField& src = all[nb].field;
                sd.field.at(nx, -1) = src.at(0, src.grid.ny - 1);
            }
            if (int nb = topo.neighbor(sd.rank, -1, +1); nb >= 0) {
                const PaddedField& src = all[nb].field;
                sd.field.at(-1, ny) = src.at(src.grid.nx - 1, 0);
            }
            if (int nb = topo.neighbor(sd.rank, +1, +1); nb >= 0) {
                const PaddedField& src = all[nb].field;
                sd.field.at(nx, ny) = src.at(0, 0);
            }
        }
    }
}

// Apply scenario boundary conditions on the sides that have no neighbour.
void fill_physical_bcs(Subdomain& sd, const Topology& topo,
                       const std::array<BoundarySpec, 4>& bc) {
    if (topo.neighbor(sd.rank, -1, 0) < 0)
        apply_bc_side(sd.field, Side::West, bc[static_cast<int>(Side::West)]);
    if (topo.neighbor(sd.rank, +1, 0) < 0)
        apply_bc_side(sd.field, Side::East, bc[static_cast<int>(Side::East)]);
    if (sd.field.grid.dim == 2) {
        if (topo.neighbor(sd.rank, 0, -1) < 0)
            apply_bc_side(sd.field, Side::South, bc[static_cast<int>(Side::South)]);
        if (topo.neighbor(sd.rank, 0, +1) < 0)
            apply_bc_side(sd.field, Side::North, bc[static_cast<int>(Side::North)]);
    }
}

struct RunPlan {
    double t_end = 0;
    double cfl = 0.5;
    double safety = 1.05;
    long max_steps = -1;
    std::vector<double> snaps;  // sorted, unique, within (0, t_end]
    bool snap_initial = false;
};

RunPlan make_plan(const Scenario& sc, const RunOptions& opt) {
    RunPlan p;
    p.t_end = opt.t_end >= 0 ? opt.t_end : sc.t_end;
    p.cfl = opt.cfl > 0 ? opt.cfl : sc.cfl;
    p.safety = opt.safety > 0 ? opt.safety : sc.safety;
    p.max_steps = opt.max_steps;
    if (!(p.t_end >= 0)) throw std::invalid_argument("run: t_end must be >= 0");
    for (double s : opt.snapshot_times) {
        if (s == 0)
            p.snap_initial = true;
        else if (s > 0 && s <= p.t_end)
            p.snaps.push_back(s);
    }
    std::sort(p.snaps.begin(), p.snaps.end());
    p.snaps.erase(std::unique(p.snaps.begin(), p.snaps.end()), p.snaps.end());
    return p;
}

// Next time the run must land on exactly: the next snapshot, else t_end.
double next_stop(std::size_t idx, const RunPlan& plan) {
    if (idx < plan.snaps.size()) return std::min(plan.snaps[idx], plan.t_end);
    return plan.t_end;
}

}  // namespace

int Topology::neighbor(int rank, int dx, int dy) const {
    int rx = rank % px + dx;
    int ry = rank / px + dy;
    if (periodic_x)
        rx = (rx + px) % px;
    else if (rx < 0 || rx >= px)
        return -1;
    if (periodic_y)
        ry = (ry + py) % py;
    else if (ry < 0 || ry >= py)
        return -1;
    return rank_of(rx, ry);
}

std::vector<Subdomain> partition(const Field& global, const Topology& topo) {
    const Grid& g = global.grid;
    if (topo.px < 1 || topo.py < 1)
        throw std::invalid_argument("partition: worker counts must be >= 1");
    if (g.dim == 1 && topo.py != 1)
        throw std::invalid_argument("partition: 1D grids require py == 1");
    if (topo.px > g.nx || topo.py > g.ny)
        throw std::invalid_argument(
            "partition: every worker needs at least one cell per axis");

    std::vector<Subdomain> parts(topo.size());
    for (int ry = 0; ry < topo.py; ++ry) {
        for (int rx = 0; rx < topo.px; ++rx) {
            Subdomain& sd = parts[topo.rank_of(rx, ry)];
            sd.rank = topo.rank_of(rx, ry);
            sd.rx = rx;
            sd.ry = ry;
            int ni = 0, nj = 0;
            block_range(g.nx, topo.px, rx, &sd.i0, &ni);
            block_range(g.ny, topo.py, ry, &sd.j0, &nj);
            sd.field = PaddedField(local_grid(g, ni, nj));
            for (int j = 0; j < nj; ++j)
                for (int i = 0; i < ni; ++i)
                    sd.field.at(i, j) = global.at(sd.i0 + i, sd.j0 + j);
        }
    }
    return parts;
}

Field gather(const std::vector<Subdomain>& parts, const Topology& topo,
             const Grid& global_grid) {
    (void)topo;
    Field out(global_grid);
    for (const Subdomain& sd : parts) {
        const Grid& lg = sd.field.grid;
        for (int j = 0; j < lg.ny; ++j)
            for (int i = 0; i < lg.nx; ++i)
                out.at(sd.i0 + i, sd.j0 + j) = sd.field.at(i, j);
    }
    return out;
}

void halo_exchange(std::vector<Subdomain>& parts, const Topology& topo,
                   bool corners) {
    if (static_cast<int>(parts.size()) != topo.size())
        throw std::invalid_argument("halo_exchange: parts/topology mismatch");
    // Pull form: reads interiors only, so in-place iteration is safe.
    for (Subdomain& sd : parts) pull_halo(sd, parts, topo, corners);
}

double global_dt(const std::vector<double>& locals) {
    if (locals.empty())
        throw std::invalid_argument("global_dt: no worker candidates");
    double dt = locals[0];
    for (double v : locals) dt = std::min(dt, v);
    return dt;
}

RunResult run_serial(const Scenario& sc, const RunOptions& opt) {
    const RunPlan plan = make_plan(sc, opt);
    const auto wall0 = Clock::now();

    PaddedField f = PaddedField::from_field(sc.initial);
    WorkerTiming tim;
    RunResult res;

    if (plan.snap_initial && opt.on_snapshot) opt.on_snapshot(0.0, f.interior());

    double t = 0;
    long steps = 0;
    std::size_t snap_idx = 0;
    while (t < plan.t_end && (plan.max_steps < 0 || steps < plan.max_steps)) {
        auto t0 = Clock::now();
        apply_bcs(f, sc.bc);
        tim.exchange_seconds += seconds_since(t0);

        t0 = Clock::now();
        const double dt_raw = cfl_dt(f, sc.law, sc.phys, plan.cfl);
        const double stop = next_stop(snap_idx, plan);
        double t_new;
        double dt;
        if (stop - t <= dt_raw) {
            dt = stop - t;
            t_new = stop;  // land exactly, no accumulation drift
        } else {
            dt = dt_raw;
            t_new = t + dt;
        }
        if (f.grid.dim == 1)
            step_1d(f, sc.law, sc.phys, dt, plan.safety);
        else
            step_2d(f, sc.law, sc.phys, dt, plan.safety);
        tim.compute_seconds += seconds_since(t0);

        t = t_new;
        ++steps;
        if (snap_idx < plan.snaps.size() && t == plan.snaps[snap_idx]) {
            if (opt.on_snapshot) opt.on_snapshot(t, f.interior());
            ++snap_idx;
        }
    }

    tim.steps = steps;
    res.final_field = f.interior();
    res.time = t;
    res.steps = steps;
    res.timing = {tim};
    res.wall_seconds = seconds_since(wall0);
    return res;
}

RunResult run_parallel(const Scenario& sc, int px, int py,
                       const RunOptions& opt) {
    const RunPlan plan = make_plan(sc, opt);
    const auto wall0 = Clock::now();

    if ((sc.bc[0].type == BcType::Periodic) != (sc.bc[1].type == BcType::Periodic))
        throw std::invalid_argument("run_parallel: periodic requires both x sides");
    if (sc.grid.dim == 2 &&
        (sc.bc[2].type == BcType::Periodic) != (sc.bc[3].type == BcType::Periodic))
        throw std::invalid_argument("run_parallel: periodic requires both y sides");

    Topology topo;
    topo.px = px;
    topo.py = py;
    topo.periodic_x = sc.bc[0].type == BcType::Periodic;
    topo.periodic_y = sc.grid.dim == 2 && sc.bc[2].type == BcType::Periodic;

    std::vector<Subdomain> parts = partition(sc.initial, topo);
    const int n = topo.size();

    std::vector<double> dts(n, std::numeric_limits<double>::infinity());
    std::vector<WorkerTiming> timing(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<bool> abort{false};
    std::barrier<> sync(n);

    RunResult res;
    // Shared scalars: every worker recomputes them identically; rank 0's
    // copies are read after the join.
    double t_final = 0;
    long steps_final = 0;

    auto worker = [&](int rank) {
        Subdomain& sd = parts[rank];
        WorkerTiming& tim = timing[rank];
        tim.rank = rank;

        auto guarded = [&](auto&& fn) {
            if (abort.load(std::memory_order_relaxed)) return;
            try {
                fn();
            } catch (...) {
                errors[rank] = std::current_exception();
                abort.store(true, std::memory_order_relaxed);
            }
        };

        if (plan.snap_initial && rank == 0 && opt.on_snapshot)
            guarded([&] { opt.on_snapshot(0.0, gather(parts, topo, sc.grid)); });
        sync.arrive_and_wait();

        double t = 0;
        long steps = 0;
        std::size_t snap_idx = 0;
        while (t < plan.t_end && (plan.max_steps < 0 || steps < plan.max_steps)) {
            // Phase 1: everyone is between steps, interiors are stable; pull
            // ghosts and fill physical boundaries.
            auto t0 = Clock::now();
            guarded([&] {
                pull_halo(sd, parts, topo, opt.exchange_corners);
                fill_physical_bcs(sd, topo, sc.bc);
            });
            sync.arrive_and_wait();
            tim.exchange_seconds += seconds_since(t0);

            // Phase 2: publish the local dt candidate.
            t0 = Clock::now();
            guarded([&] { dts[rank] = cfl_dt(sd.field, sc.law, sc.phys, plan.cfl); });
            sync.arrive_and_wait();

            // Phase 3: identical reduction on every worker, then step.
            const double dt_raw = global_dt(dts);
            const double stop = next_stop(snap_idx, plan);
            double t_new;
            double dt;
            if (stop - t <= dt_raw) {
                dt = stop - t;
                t_new = stop;
            } else {
                dt = dt_raw;
                t_new = t + dt;
            }
            guarded([&] {
                if (sd.field.grid.dim == 1)
                    step_1d(sd.field, sc.law, sc.phys, dt, plan.safety);
                else
                    step_2d(sd.field, sc.law, sc.phys, dt, plan.safety);
            });
            tim.compute_seconds += seconds_since(t0);
            sync.arrive_and_wait();

            t = t_new;
            ++steps;
            if (abort.load(std::memory_order_relaxed)) break;

            if (snap_idx < plan.snaps.size() && t == plan.snaps[snap_idx]) {
                t0 = Clock::now();
                if (rank == 0 && opt.on_snapshot)
                    guarded([&] { opt.on_snapshot(t, gather(parts, topo, sc.grid)); });
                sync.arrive_and_wait();
                tim.exchange_seconds += seconds_since(t0);
                ++snap_idx;
            }
        }
        tim.steps = steps;
        if (rank == 0) {
            t_final = t;
            steps_final = steps;
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n);
    for (int r = 0; r < n; ++r) pool.emplace_back(worker, r);
    for (auto& th : pool) th.join();

    for (int r = 0; r < n; ++r)
        if (errors[r]) std::rethrow_exception(errors[r]);

    res.final_field = gather(parts, topo, sc.grid);
    res.time = t_final;
    res.steps = steps_final;
    res.timing = timing;
    res.wall_seconds = seconds_since(wall0);
    return res;
}

}  // namespace silt
