#pragma once

namespace silt {

// Global physical and numerical constants shared by every module.  Carried by
// value so that concurrent runs with different settings never race.
struct Physics {
    double gravity = 9.81;  // gravitational acceleration [m/s^2]
    double h_dry = 1e-8;    // depth below which a cell is treated as dry [m]
    double u_eps = 1e-10;   // velocity magnitude treated as "at rest" [m/s]
};

}  // namespace silt
