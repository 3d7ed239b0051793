#include "silt/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace silt {

namespace {

void check_axis(double length, int cells, const char* axis) {
    if (!(length > 0) || !std::isfinite(length))
        throw std::invalid_argument(std::string("grid: length_") + axis + " must be positive");
    if (cells < 1)
        throw std::invalid_argument(std::string("grid: cell count n") + axis + " must be >= 1");
}

}  // namespace

Grid Grid::make_1d(double length, int cells) {
    check_axis(length, cells, "x");
    Grid g;
    g.dim = 1;
    g.nx = cells;
    g.ny = 1;
    g.length_x = length;
    g.length_y = 0;
    g.dx = length / cells;
    g.dy = 1.0;  // unit transverse width: volumes are per metre of breadth
    return g;
}

Grid Grid::make_2d(double length_x, double length_y, int cells_x, int cells_y) {
    check_axis(length_x, cells_x, "x");
    check_axis(length_y, cells_y, "y");
    Grid g;
    g.dim = 2;
    g.nx = cells_x;
    g.ny = cells_y;
    g.length_x = length_x;
    g.length_y = length_y;
    g.dx = length_x / cells_x;
    g.dy = length_y / cells_y;
    return g;
}

Primitives primitives(const FlowState& s, double h_dry) {
    Primitives p;
    p.h = s.h;
    p.zb = s.zb;
    if (s.h > h_dry) {
        p.u = s.hu / s.h;
        p.v = s.hv / s.h;
    } else {
        p.u = 0;
        p.v = 0;
    }
    return p;
}

double total_water_volume(const Field& f) {
    const double cell = f.grid.dx * f.grid.dy;
    double sum = 0;
    for (const FlowState& s : f.cells) sum += s.h;
    return sum * cell;
}

double total_bed_volume(const Field& f) {
    const double cell = f.grid.dx * f.grid.dy;
    double sum = 0;
    for (const FlowState& s : f.cells) sum += s.zb;
    return sum * cell;
}

}  // namespace silt
