#pragma once

#include <cstddef>
#include <vector>

#include "silt/physics.hpp"

namespace silt {

// Uniform Cartesian cell-centred grid.  A 1D grid is a 2D grid with ny == 1;
// every consumer can therefore iterate (j, i) without caring about dim.
struct Grid {
    int dim = 1;          // 1 or 2
    int nx = 0, ny = 1;   // cell counts per axis
    double length_x = 0;  // domain extent [m]
    double length_y = 0;
    double dx = 0, dy = 0;

    static Grid make_1d(double length, int cells);
    static Grid make_2d(double length_x, double length_y, int cells_x, int cells_y);

    // Cell-centre coordinates: x_i = (i + 1/2) dx.
    double x_center(int i) const { return (i + 0.5) * dx; }
    double y_center(int j) const { return (j + 0.5) * dy; }

    std::size_t cell_count() const { return static_cast<std::size_t>(nx) * ny; }
};

// Conserved per-cell unknowns.  hv is carried in 1D as well (identically 0)
// so that 1D and 2D share one layout.
struct FlowState {
    double h = 0;   // water depth [m]
    double hu = 0;  // x-discharge [m^2/s]
    double hv = 0;  // y-discharge [m^2/s]
    double zb = 0;  // bed elevation [m]
};

struct Primitives {
    double h = 0;
    double u = 0;
    double v = 0;
    double zb = 0;
};

// Velocity recovery with a dry guard: below h_dry the cell is motionless.
Primitives primitives(const FlowState& s, double h_dry);

// Cell-centred field over a grid, row-major with i (x-index) fastest.
struct Field {
    Grid grid;
    std::vector<FlowState> cells;

    Field() = default;
    explicit Field(const Grid& g) : grid(g), cells(g.cell_count()) {}

    FlowState& at(int i, int j = 0) {
        return cells[static_cast<std::size_t>(j) * grid.nx + i];
    }
    const FlowState& at(int i, int j = 0) const {
        return cells[static_cast<std::size_t>(j) * grid.nx + i];
    }
};

// Volume diagnostics used by the conservation checks: cell-size-weighted sums.
double total_water_volume(const Field& f);
double total_bed_volume(const Field& f);

}  // namespace silt
