#pragma once

#include <string>

#include "silt/physics.hpp"

namespace silt {

// Threshold-type dimensionless transport formulas.  Each maps a Shields
// stress tau to a dimensionless rate q*(tau); all are zero at or below the
// critical stress (Camenen decays smoothly instead of switching off).
enum class ShieldsFormula {
    MeyerPeterMuller,        // 8 (tau - tau_cr)^{3/2}
    FernandezLuqueVanBeek,   // 5.7 (tau - tau_cr)^{3/2}
    Nielsen,                 // 12 sqrt(tau) (tau - tau_cr)
    Ribberink,               // 11 (tau - tau_cr)^{1.65}
    CamenenLarson,           // 12 tau^{3/2} exp(-4.5 tau_cr / tau)
};

enum class FrictionModel {
    DarcyWeisbach,  // S_f = f u|u| / (8 g h)
    Manning,        // S_f = n^2 u|u| / h^{4/3}
};

struct FrictionLaw {
    FrictionModel model = FrictionModel::DarcyWeisbach;
    double coefficient = 0.03;  // f for Darcy-Weisbach, n for Manning
};

// A bedload closure: either the algebraic Grass law q_b = A_g u |u|^{m_g - 1}
// or a Shields-threshold formula made dimensional through a friction slope.
struct BedloadLaw {
    enum class Kind { Grass, Shields } kind = Kind::Grass;

    // Grass parameters
    double a_g = 0.0;  // interaction strength [s^2/m], 0 = fixed bed
    double m_g = 3.0;  // exponent, 1 <= m_g <= 4

    // Shields parameters
    ShieldsFormula formula = ShieldsFormula::MeyerPeterMuller;
    double tau_cr = 0.047;        // critical Shields stress [-]
    double grain_diameter = 1e-3; // d_s [m]
    double rel_density = 2.65;    // s = rho_sediment / rho_water [-]
    FrictionLaw friction;

    static BedloadLaw grass(double a_g, double m_g = 3.0);
    static BedloadLaw shields(ShieldsFormula formula, FrictionLaw friction,
                              double tau_cr = 0.047, double grain_diameter = 1e-3,
                              double rel_density = 2.65);

    std::string describe() const;
};

// Derivatives of the bedload rate q_b(h, hu) used by the characteristic
// analysis and the solid celerity bound.
struct FluxDerivatives {
    double alpha = 0;   // d q_b / d h       at fixed hu
    double beta = 0;    // d q_b / d (hu)    at fixed h
    double dqs_du = 0;  // d q_b / d u       at fixed h  (= h * beta)
};

// Grass rate q_b = a_g u |u|^{m_g-1}; odd in u.
double grass_flux(double u, double a_g, double m_g);

// Friction slope S_f(u, h) for the chosen model; odd in u, singular-safe
// (returns 0 when h is not positive).
double friction_slope(const FrictionLaw& law, double u, double h, double gravity);

// Dimensionless rate q*(tau) and its upper one-sided derivative dq*/dtau.
// Both vanish for tau <= tau_cr (Camenen: for tau <= 0).
double shields_flux(ShieldsFormula formula, double tau, double tau_cr);
double shields_flux_derivative(ShieldsFormula formula, double tau, double tau_cr);

// Shields stress tau(h, u) = h S_f(u,h) / ((s-1) d_s) for the law's friction
// model; even in u.
double shields_stress(const BedloadLaw& law, double h, double u, double gravity);

// Dimensional bedload rate q_b(h, u) [m^2/s] for either law kind; odd in u.
double dimensional_flux(const BedloadLaw& law, double h, double u, double gravity);

// alpha, beta, dqs_du at a wet state (h, hu).  Threshold kinks take the
// upper one-sided derivative.
FluxDerivatives flux_derivatives(const BedloadLaw& law, double h, double hu,
                                 double gravity);

// True when the law transports nothing at this state *and* responds to no
// infinitesimal velocity change (rate and d/du both zero).  Interfaces where
// both sides satisfy this freeze the bed exactly.
bool transport_is_zero(const BedloadLaw& law, double h, double u, double gravity);

// Isotropic planar extension: the flux vector is the scalar rate evaluated at
// the speed, directed along the velocity.  Returns the component along the
// axis of `u_n` (normal) given the transverse component `u_t`, plus its
// derivative with respect to u_n.
double normal_flux(const BedloadLaw& law, double h, double u_n, double u_t,
                   double gravity);
double normal_flux_derivative(const BedloadLaw& law, double h, double u_n,
                              double u_t, double gravity);

}  // namespace silt
