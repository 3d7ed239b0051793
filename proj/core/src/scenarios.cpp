#include "silt/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace silt {

BoundarySpec BoundarySpec::inflow_subcritical(double q0) {
    BoundarySpec b;
    b.type = BcType::Inflow;
    b.q0 = q0;
    b.supercritical = false;
    return b;
}

BoundarySpec BoundarySpec::inflow_supercritical(double q0, double h0) {
    BoundarySpec b;
    b.type = BcType::Inflow;
    b.q0 = q0;
    b.h0 = h0;
    b.supercritical = true;
    return b;
}

BoundarySpec BoundarySpec::wall() {
    BoundarySpec b;
    b.type = BcType::Wall;
    return b;
}

BoundarySpec BoundarySpec::periodic() {
    BoundarySpec b;
    b.type = BcType::Periodic;
    return b;
}

namespace {

// Ghost value for a physical (non-periodic) boundary, given the adjacent
// interior cell.  The bed is always zero-gradient: inflow prescribes the
// flow, not the topography.
FlowState ghost_value(const FlowState& interior, Side side,
                      const BoundarySpec& spec) {
    FlowState g = interior;  // zero-gradient default (FreeOutflow)
    switch (spec.type) {
        case BcType::FreeOutflow:
            break;
        case BcType::Inflow: {
            const bool xside = (side == Side::West || side == Side::East);
            if (spec.supercritical) g.h = spec.h0;
            if (xside) {
                g.hu = spec.q0;
                g.hv = 0;
            } else {
                g.hv = spec.q0;
                g.hu = 0;
            }
            break;
        }
        case BcType::Wall: {
            const bool xside = (side == Side::West || side == Side::East);
            if (xside)
                g.hu = -g.hu;
            else
                g.hv = -g.hv;
            break;
        }
        case BcType::Periodic:
            throw std::invalid_argument(
                "apply_bc_side: periodic sides wrap through the topology");
    }
    return g;
}

}  // namespace

void apply_bc_side(PaddedField& f, Side side, const BoundarySpec& spec) {
    const int nx = f.grid.nx;
    const int ny = f.grid.ny;
    switch (side) {
        case Side::West:
            for (int j = 0; j < ny; ++j)
                f.at(-1, j) = ghost_value(f.at(0, j), side, spec);
            break;
        case Side::East:
            for (int j = 0; j < ny; ++j)
                f.at(nx, j) = ghost_value(f.at(nx - 1, j), side, spec);
            break;
        case Side::South:
            for (int i = 0; i < nx; ++i)
                f.at(i, -1) = ghost_value(f.at(i, 0), side, spec);
            break;
        case Side::North:
            for (int i = 0; i < nx; ++i)
                f.at(i, ny) = ghost_value(f.at(i, ny - 1), side, spec);
            break;
    }
}

void apply_bcs(PaddedField& f, const std::array<BoundarySpec, 4>& bc) {
    const int nx = f.grid.nx;
    const int ny = f.grid.ny;

    const bool per_x = bc[0].type == BcType::Periodic;
    const bool per_y = bc[2].type == BcType::Periodic;
    if (per_x != (bc[1].type == BcType::Periodic))
        throw std::invalid_argument("apply_bcs: periodic requires both x sides");
    if (f.grid.dim == 2 && per_y != (bc[3].type == BcType::Periodic))
        throw std::invalid_argument("apply_bcs: periodic requires both y sides");

    if (per_x) {
        for (int j = 0; j < ny; ++j) {
            f.at(-1, j) = f.at(nx - 1, j);
            f.at(nx, j) = f.at(0, j);
        }
    } else {
        apply_bc_side(f, Side::West, bc[0]);
        apply_bc_side(f, Side::East, bc[1]);
    }

    if (f.grid.dim == 2) {
        if (per_y) {
            for (int i = 0; i < nx; ++i) {
                f.at(i, -1) = f.at(i, ny - 1);
                f.at(i, ny) = f.at(i, 0);
            }
        } else {
            apply_bc_side(f, Side::South, bc[2]);
            apply_bc_side(f, Side::North, bc[3]);
        }
        // Corner ghosts: wrap if both axes are periodic, otherwise copy the
        // nearest interior cell.  First-order face solves never read them;
        // they exist so the optional corner exchange has defined values.
        auto corner = [&](int gi, int gj, int ii, int ij) {
            f.at(gi, gj) = (per_x && per_y) ? f.at((gi + nx) % nx, (gj + ny) % ny)
                                            : f.at(ii, ij);
        };
        corner(-1, -1, 0, 0);
        corner(nx, -1, nx - 1, 0);
        corner(-1, ny, 0, ny - 1);
        corner(nx, ny, nx - 1, ny - 1);
    }
}

BernoulliProfile bernoulli_supercritical_profile(double q0, double h0,
                                                 double zb_ref,
                                                 const std::vector<double>& zb,
                                                 double gravity) {
    if (!(q0 > 0) || !(h0 > 0))
        throw std::invalid_argument("bernoulli profile: q0 and h0 must be > 0");
    BernoulliProfile out;
    out.critical_depth = std::cbrt(q0 * q0 / gravity);
    if (!(h0 < out.critical_depth))
        throw std::invalid_argument(
            "bernoulli profile: inflow depth must be supercritical (h0 < h_c)");
    out.head = q0 * q0 / (2.0 * gravity * h0 * h0) + h0 + zb_ref;

    const double qq = q0 * q0 / (2.0 * gravity);
    const double e_min = 1.5 * out.critical_depth;  // specific head at critical

    out.h.resize(zb.size());
    out.choked.assign(zb.size(), 0);
    for (std::size_t i = 0; i < zb.size(); ++i) {
        const double e_target = out.head - zb[i];
        if (e_target < e_min) {
            out.h[i] = out.critical_depth;
            out.choked[i] = 1;
            ++out.choked_count;
            continue;
        }
        // f(h) = h^3 - e_target h^2 + qq, decreasing through its supercritical
        // root on (0, h_c]; f(0) > 0 >= f(h_c) brackets it.
        auto fval = [&](double h) { return (h - e_target) * h * h + qq; };
        double lo = 1e-12 * out.critical_depth, hi = out.critical_depth;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            (fval(mid) > 0 ? lo : hi) = mid;
        }
        double h = 0.5 * (lo + hi);
        for (int it = 0; it < 2; ++it) {  // Newton polish
            const double df = (3.0 * h - 2.0 * e_target) * h;
            if (df == 0) break;
            h -= fval(h) / df;
        }
        out.h[i] = h;
    }
    return out;
}

namespace {

double sine_bump(double x, double start, double width) {
    const double s = std::sin((x - start) * std::numbers::pi / width);
    return s * s;
}

}  // namespace

Scenario build_dune_1d(int cells, const Physics& phys) {
    if (cells <= 0) cells = 2000;
    Scenario sc;
    sc.phys = phys;
    sc.name = "dune1d";
    sc.grid = Grid::make_1d(1000.0, cells);
    sc.initial = Field(sc.grid);
    sc.law = BedloadLaw::grass(1.0, 3.0);
    sc.t_end = 700.0;
    const double q0 = 10.0;
    for (int i = 0; i < cells; ++i) {
        const double x = sc.grid.x_center(i);
        FlowState& s = sc.initial.at(i);
        s.zb = 0.1 + ((x >= 300.0 && x <= 500.0) ? sine_bump(x, 300.0, 200.0) : 0.0);
        s.h = 10.0 - s.zb;  // flat free surface at 10 m
        s.hu = q0;
    }
    sc.bc[static_cast<int>(Side::West)] = BoundarySpec::inflow_subcritical(q0);
    sc.bc[static_cast<int>(Side::East)] = BoundarySpec::outflow();
    return sc;
}

Scenario build_antidune_1d(int cells, const Physics& phys) {
    if (cells <= 0) cells = 2400;
    Scenario sc;
    sc.phys = phys;
    sc.name = "antidune1d";
    sc.grid = Grid::make_1d(24.0, cells);
    sc.initial = Field(sc.grid);
    sc.law = BedloadLaw::grass(0.001, 3.0);
    sc.t_end = 50.0;
    const double q0 = 1.7;
    const double h0 = 0.5;

    std::vector<double> zb(cells);
    for (int i = 0; i < cells; ++i) {
        const double x = sc.grid.x_center(i);
        const double d = x - 10.0;
        zb[i] = (x >= 8.0 && x <= 12.0) ? 0.2 - 0.05 * d * d : 0.0;
    }
    const BernoulliProfile prof =
        bernoulli_supercritical_profile(q0, h0, 0.0, zb, sc.phys.gravity);
    sc.choked_cells = prof.choked_count;
    for (int i = 0; i < cells; ++i) {
        FlowState& s = sc.initial.at(i);
        s.zb = zb[i];
        s.h = prof.h[i];
        s.hu = q0;
    }
    sc.bc[static_cast<int>(Side::West)] =
        BoundarySpec::inflow_supercritical(q0, h0);
    sc.bc[static_cast<int>(Side::East)] = BoundarySpec::outflow();
    return sc;
}

Scenario build_bump_2d(int cells_x, int cells_y, double a_g, double t_end,
                       const Physics& phys) {
    if (cells_x <= 0) cells_x = 200;
    if (cells_y <= 0) cells_y = cells_x;
    if (t_end <= 0) t_end = (a_g < 0.5) ? 1000.0 : 500.0;
    Scenario sc;
    sc.phys = phys;
    sc.name = "bump2d";
    sc.grid = Grid::make_2d(1000.0, 1000.0, cells_x, cells_y);
    sc.initial = Field(sc.grid);
    sc.law = BedloadLaw::grass(a_g, 3.0);
    sc.t_end = t_end;
    const double q0 = 10.0;
    for (int j = 0; j < cells_y; ++j) {
        const double y = sc.grid.y_center(j);
        const double wy =
            (y >= 400.0 && y <= 600.0) ? sine_bump(y, 400.0, 200.0) : 0.0;
        for (int i = 0; i < cells_x; ++i) {
            const double x = sc.grid.x_center(i);
            const double wx =
                (x >= 300.0 && x <= 500.0) ? sine_bump(x, 300.0, 200.0) : 0.0;
            FlowState& s = sc.initial.at(i, j);
            s.zb = 0.1 + wx * wy;
            s.h = 10.0 - s.zb;
            s.hu = q0;
        }
    }
    sc.bc[static_cast<int>(Side::West)] = BoundarySpec::inflow_subcritical(q0);
    sc.bc[static_cast<int>(Side::East)] = BoundarySpec::outflow();
    sc.bc[static_cast<int>(Side::South)] = BoundarySpec::outflow();
    sc.bc[static_cast<int>(Side::North)] = BoundarySpec::outflow();
    return sc;
}

Scenario build_scenario(const std::string& name, int cells_x, int cells_y,
                        const Physics& phys) {
    if (name == "dune1d") return build_dune_1d(cells_x, phys);
    if (name == "antidune1d") return build_antidune_1d(cells_x, phys);
    if (name == "bump2d") return build_bump_2d(cells_x, cells_y, 1.0, -1.0, phys);
    throw std::invalid_argument("unknown scenario '" + name +
                                "' (expected dune1d, antidune1d or bump2d)");
}

}  // namespace silt
