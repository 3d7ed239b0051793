#pragma once

#include <array>
#include <string>

#include "silt/bedload.hpp"
#include "silt/physics.hpp"

namespace silt {

// Roots of the coupled characteristic cubic
//   lambda^3 - 2u lambda^2 + (u^2 - g h (1 + beta)) lambda - g h alpha = 0.
// When `real` is true all three roots are real, sorted ascending.  Otherwise
// roots[0] holds the single real root and roots[1]/roots[2] the real and
// imaginary parts of the conjugate pair.
struct CubicRoots {
    std::array<double, 3> roots{};
    bool real = true;
};

CubicRoots characteristic_roots(double h, double u, double alpha, double beta,
                                double gravity);

enum class BedformRegime {
    Still,          // |u| at rest: no transport direction to speak of
    Dune,           // bed wave travels downstream (subcritical flow)
    Antidune,       // bed wave travels upstream (supercritical flow)
    NonHyperbolic,  // complex characteristic pair: ill-posed locally
    Mixed,          // sign pattern matches neither bedform; reported verbatim
};

std::string to_string(BedformRegime r);

struct RegimeReport {
    CubicRoots cubic;
    double froude = 0;          // |u| / sqrt(g h)
    double sediment_root = 0;   // root of smallest magnitude (weak interaction)
    BedformRegime regime = BedformRegime::Still;
    bool transcritical = false; // |Fr - 1| small: classification unreliable
    std::string sign_pattern;   // e.g. "-0+", signs of the sorted roots
    FluxDerivatives derivs;     // alpha/beta the cubic was built from
};

// Full local analysis of a wet state under a bedload law.
RegimeReport analyze_regime(double h, double u, const BedloadLaw& law,
                            const Physics& phys);

}  // namespace silt
