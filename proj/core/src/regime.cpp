#include "silt/regime.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace silt {

namespace {

// One cubic value/derivative evaluation for Newton polishing.
struct CubicEval {
    double f, df;
};

CubicEval eval_cubic(double x, double c2, double c1, double c0) {
    CubicEval e;
    e.f = ((x + c2) * x + c1) * x + c0;
    e.df = (3.0 * x + 2.0 * c2) * x + c1;
    return e;
}

double polish_root(double x, double c2, double c1, double c0) {
    for (int it = 0; it < 3; ++it) {
        const CubicEval e = eval_cubic(x, c2, c1, c0);
        if (e.df == 0.0) break;
        const double step = e.f / e.df;
        if (!std::isfinite(step)) break;
        x -= step;
    }
    return x;
}

}  // namespace

CubicRoots characteristic_roots(double h, double u, double alpha, double beta,
                                double gravity) {
    if (!(h > 0)) throw std::invalid_argument("characteristic_roots: h must be > 0");
    const double gh = gravity * h;

    // Monic coefficients: lambda^3 + c2 lambda^2 + c1 lambda + c0.
    const double c2 = -2.0 * u;
    const double c1 = u * u - gh * (1.0 + beta);
    const double c0 = -gh * alpha;

    // Depressed form t^3 + p t + q with lambda = t - c2/3.
    const double shift = c2 / 3.0;
    const double p = c1 - c2 * c2 / 3.0;
    const double q = c0 + c2 * (2.0 * c2 * c2 - 9.0 * c1) / 27.0;

    // Scaled discriminant: 4p^3 + 27q^2 within 1e-12 of zero (relative to the
    // natural sixth-power scale) counts as the repeated-root boundary, which
    // is still hyperbolic.
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    const double scale = std::max({std::sqrt(std::fabs(p)), std::cbrt(std::fabs(q)), 1e-30});
    const double s6 = scale * scale * scale * scale * scale * scale;

    CubicRoots out;
    if (disc > 1e-12 * s6) {
        // Three distinct real roots: trigonometric form, numerically stable.
        const double m = 2.0 * std::sqrt(-p / 3.0);
        double arg = 3.0 * q / (p * m);  // = cos(3 theta), clamp fp spill
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k)
            out.roots[k] = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0) - shift;
    } else if (disc >= -1e-12 * s6) {
        // Repeated-root boundary: double root -q'/... use the closed form
        // t1 = 3q/p (simple), t2 = t3 = -3q/(2p); p == 0 collapses to triple 0.
        if (p == 0.0) {
            out.roots = {-shift, -shift, -shift};
        } else {
            out.roots[0] = 3.0 * q / p - shift;
            out.roots[1] = -1.5 * q / p - shift;
            out.roots[2] = out.roots[1];
        }
    } else {
        // One real root (stable Cardano) + conjugate pair.
        const double r = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        // Avoid cancellation: pick the larger-magnitude cube-root argument.
        const double w = (q > 0) ? -q / 2.0 - r : -q / 2.0 + r;
        const double cw = std::cbrt(w);
        double t1 = (cw == 0.0) ? 0.0 : cw - p / (3.0 * cw);
        double x1 = polish_root(t1 - shift, c2, c1, c0);
        // Deflate: remaining quadratic lambda^2 + (c2 + x1) lambda + (-c0/x1).
        const double b = c2 + x1;
        const double c = (x1 != 0.0) ? -c0 / x1 : c1 + x1 * b;
        const double half = -b / 2.0;
        const double rad = c - half * half;  // positive in the complex case
        out.real = false;
        out.roots[0] = x1;
        out.roots[1] = half;                         // real part of the pair
        out.roots[2] = std::sqrt(std::max(rad, 0.0));  // imaginary part
        return out;
    }

    for (double& x : out.roots) x = polish_root(x, c2, c1, c0);
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

std::string to_string(BedformRegime r) {
    switch (r) {
        case BedformRegime::Still: return "still";
        case BedformRegime::Dune: return "dune";
        case BedformRegime::Antidune: return "antidune";
        case BedformRegime::NonHyperbolic: return "non-hyperbolic";
        case BedformRegime::Mixed: return "mixed";
    }
    return "?";
}

RegimeReport analyze_regime(double h, double u, const BedloadLaw& law,
                            const Physics& phys) {
    if (!(h > phys.h_dry))
        throw std::invalid_argument("analyze_regime: state must be wet");

    RegimeReport rep;
    rep.derivs = flux_derivatives(law, h, h * u, phys.gravity);
    rep.cubic = characteristic_roots(h, u, rep.derivs.alpha, rep.derivs.beta,
                                     phys.gravity);
    rep.froude = std::fabs(u) / std::sqrt(phys.gravity * h);
    rep.transcritical = std::fabs(rep.froude - 1.0) <= 0.05;

    if (!rep.cubic.real) {
        rep.regime = BedformRegime::NonHyperbolic;
        rep.sign_pattern = "complex pair";
        return rep;
    }

    // Mirror normalization: classify as if u >= 0.  Negating u negates alpha
    // and all roots, so signs below are stated for the u >= 0 orientation.
    std::array<double, 3> roots = rep.cubic.roots;
    if (u < 0) {
        for (double& r : roots) r = -r;
        std::sort(roots.begin(), roots.end());
    }

    // The bed wave is the root of smallest magnitude (weak-interaction limit:
    // the other two approach the fluid pair u -+ sqrt(gh)).
    int sed = 0;
    for (int k = 1; k < 3; ++k)
        if (std::fabs(roots[k]) < std::fabs(roots[sed])) sed = k;
    const double sed_root = roots[sed];
    rep.sediment_root = (u < 0) ? -sed_root : sed_root;

    for (double r : roots)
        rep.sign_pattern += (r > 0) ? '+' : (r < 0) ? '-' : '0';

    if (std::fabs(u) <= phys.u_eps) {
        rep.regime = BedformRegime::Still;
    } else if (sed_root > 0 && rep.froude < 1.0) {
        rep.regime = BedformRegime::Dune;
    } else if (sed_root < 0 && rep.froude > 1.0) {
        rep.regime = BedformRegime::Antidune;
    } else {
        rep.regime = BedformRegime::Mixed;
    }
    return rep;
}

}  // namespace silt
