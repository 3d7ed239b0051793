#include "silt/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "silt/relax_state.hpp"
#include "silt/riemann.hpp"

namespace silt {

PaddedField PaddedField::from_field(const Field& f) {
    PaddedField p(f.grid);
    for (int j = 0; j < f.grid.ny; ++j)
        for (int i = 0; i < f.grid.nx; ++i) p.at(i, j) = f.at(i, j);
    return p;
}

Field PaddedField::interior() const {
    Field f(grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int i = 0; i < grid.nx; ++i) f.at(i, j) = at(i, j);
    return f;
}

namespace {

// Per-cell inverse of the largest admissible dt along one axis.
double axis_speed(const BedloadLaw& law, const Physics& phys, double h,
                  double un, double ut) {
    const double fluid = std::fabs(un) + std::sqrt(phys.gravity * h);
    const double dq = normal_flux_derivative(law, h, un, ut, phys.gravity);
    const double solid = std::fabs(un) + std::sqrt(un * un + phys.gravity * dq);
    return std::max(fluid, solid);
}

template <typename CellAt>
double cfl_dt_impl(const Grid& g, CellAt&& cell, const BedloadLaw& law,
                   const Physics& phys, double cfl) {
    if (!(cfl > 0) || !(cfl <= 1))
        throw std::invalid_argument("cfl_dt: cfl must lie in (0, 1]");
    double dt = std::numeric_limits<double>::infinity();
    bool any_wet = false;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const FlowState& s = cell(i, j);
            if (!(s.h > phys.h_dry)) continue;
            any_wet = true;
            const Primitives p = primitives(s, phys.h_dry);
            dt = std::min(dt, g.dx / axis_speed(law, phys, p.h, p.u, p.v));
            if (g.dim == 2)
                dt = std::min(dt, g.dy / axis_speed(law, phys, p.h, p.v, p.u));
        }
    }
    if (!any_wet) throw std::invalid_argument("cfl_dt: field is entirely dry");
    return cfl * dt;
}

// Fluxes of one solved interface, in the cell-update layout.
struct FaceFlux {
    double h = 0;
    double hu_left = 0;   // momentum flux applied to the left cell
    double hu_right = 0;  // momentum flux applied to the right cell
    double hv = 0;        // transverse momentum (passive advection)
    double z = 0;
};

FaceFlux solve_face(const FlowState& lc, const FlowState& rc,
                    const BedloadLaw& law, const Physics& phys, double safety,
                    double gravity, Axis axis) {
    const RelaxState l = equilibrate(lc, law, phys, axis);
    const RelaxState r = equilibrate(rc, law, phys, axis);
    const Primitives pl = primitives(lc, phys.h_dry);
    const Primitives pr = primitives(rc, phys.h_dry);
    const double vt_l = (axis == Axis::X) ? pl.v : pl.u;
    const double vt_r = (axis == Axis::X) ? pr.v : pr.u;

    const CelerityPair cel = celerity_bounds(l, r, vt_l, vt_r, law, phys, safety);
    const InterfaceSolution sol = interface_riemann(l, r, cel, gravity);

    FaceFlux f;
    f.h = sol.flux_h;
    f.hu_left = sol.flux_hu_left;
    f.hu_right = sol.flux_hu_right;
    f.z = sol.flux_z;
    f.hv = sol.flux_h * (sol.flux_h > 0 ? vt_l : sol.flux_h < 0 ? vt_r : 0.0);
    return f;
}

void check_depth(double& h, double href) {
    if (h >= 0) return;
    // Tolerate bare roundoff below zero; anything larger is a real violation.
    if (h > -1e-12 * std::max(href, 1.0)) {
        h = 0;
        return;
    }
    throw std::runtime_error(
        "step: negative depth produced; time step or celerities violate stability");
}

}  // namespace

double cfl_dt(const Field& f, const BedloadLaw& law, const Physics& phys,
              double cfl) {
    return cfl_dt_impl(
        f.grid, [&](int i, int j) -> const FlowState& { return f.at(i, j); },
        law, phys, cfl);
}

double cfl_dt(const PaddedField& f, const BedloadLaw& law, const Physics& phys,
              double cfl) {
    return cfl_dt_impl(
        f.grid, [&](int i, int j) -> const FlowState& { return f.at(i, j); },
        law, phys, cfl);
}

void step_1d(PaddedField& f, const BedloadLaw& law, const Physics& phys,
             double dt, double safety) {
    const int nx = f.grid.nx;
    const double c = dt / f.grid.dx;

    // Interface k sits between cells (k-1) and k, k = 0 .. nx.
    std::vector<FaceFlux> flux(nx + 1);
    for (int k = 0; k <= nx; ++k)
        flux[k] = solve_face(f.at(k - 1), f.at(k), law, phys, safety,
                             phys.gravity, Axis::X);

    double hmax = 0;
    for (int i = 0; i < nx; ++i) hmax = std::max(hmax, f.at(i).h);

    for (int i = 0; i < nx; ++i) {
        FlowState& s = f.at(i);
        s.h -= c * (flux[i + 1].h - flux[i].h);
        s.hu -= c * (flux[i + 1].hu_left - flux[i].hu_right);
        s.hv -= c * (flux[i + 1].hv - flux[i].hv);
        s.zb -= c * (flux[i + 1].z - flux[i].z);
        check_depth(s.h, hmax);
    }
}

void step_2d(PaddedField& f, const BedloadLaw& law, const Physics& phys,
             double dt, double safety) {
    const int nx = f.grid.nx;
    const int ny = f.grid.ny;
    const double cx = dt / f.grid.dx;
    const double cy = dt / f.grid.dy;

    // Unsplit: all face problems see the time-level-n state.
    const PaddedField old = f;

    double hmax = 0;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) hmax = std::max(hmax, old.at(i, j).h);

    // x faces, streamed one row at a time: face k of row j sits between
    // cells (k-1, j) and (k, j).
    std::vector<FaceFlux> fx(nx + 1);
    for (int j = 0; j < ny; ++j) {
        for (int k = 0; k <= nx; ++k)
            fx[k] = solve_face(old.at(k - 1, j), old.at(k, j), law, phys,
                               safety, phys.gravity, Axis::X);
        for (int i = 0; i < nx; ++i) {
            FlowState& s = f.at(i, j);
            s.h -= cx * (fx[i + 1].h - fx[i].h);
            s.hu -= cx * (fx[i + 1].hu_left - fx[i].hu_right);
            s.hv -= cx * (fx[i + 1].hv - fx[i].hv);
            s.zb -= cx * (fx[i + 1].z - fx[i].z);
        }
    }

    // y faces: face k of column i sits between cells (i, k-1) and (i, k).
    // The face solver works in (normal, transverse) components, so hu/hv
    // swap roles going in and coming back.
    std::vector<FaceFlux> fy(ny + 1);
    for (int i = 0; i < nx; ++i) {
        for (int k = 0; k <= ny; ++k)
            fy[k] = solve_face(old.at(i, k - 1), old.at(i, k), law, phys,
                               safety, phys.gravity, Axis::Y);
        for (int j = 0; j < ny; ++j) {
            FlowState& s = f.at(i, j);
            s.h -= cy * (fy[j + 1].h - fy[j].h);
            s.hv -= cy * (fy[j + 1].hu_left - fy[j].hu_right);
            s.hu -= cy * (fy[j + 1].hv - fy[j].hv);
            s.zb -= cy * (fy[j + 1].z - fy[j].z);
            check_depth(s.h, hmax);
        }
    }
}

}  // namespace silt
