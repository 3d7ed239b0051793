#include "silt/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

// Interface solver for the five-wave relaxation system.  Every field below is
// derived from the wave-family invariants (see core/docs/relaxation_solver.md
// for the full derivation):
//
//   fluid waves  (speed u -+ a/H):  u -+ a tau,  pi +- a u,  z,  omega
//   contact      (speed u):         u, pi, z, omega          (only H jumps)
//   solid waves  (speed u -+ b/H):  u -+ b tau,  pi + a^2 tau,
//                                   omega - sigma z,  tau^2 - 2 k z
//
// with tau = 1/H and k = g / (a^2 - b^2).  pi + a^2 tau is invariant across
// every wave except the contact, so it is single-valued on each side of it.
// Depth and bed obey exact jump conditions per wave ([Hu] = sigma [H],
// [omega] = sigma [z]), giving single-valued interface fluxes.  Momentum is
// not conserved across solid waves: each carries the topography exchange
//
//   M_w = integral of g H dZ along the wave = (a^2 - b^2) (tau_right - tau_left),
//
// and the two cells adjacent to the interface receive
//
//   G- = (Hu^2 + pi)(xi = 0) + sum_{sigma_w <  0} M_w   (left cell)
//   G+ = (Hu^2 + pi)(xi = 0) - sum_{sigma_w >= 0} M_w   (right cell).
//
// The wave ordering depends on which celerity is larger.  For b > a the solid
// waves are outermost and their speeds are known from the input states, so the
// star region follows in closed form.  For a > b the two interior solid wave
// speeds (m2, m4) satisfy a 2x2 nonlinear system solved by a damped Newton
// iteration; on flat-bed, equal-omega data its initial guess is already the
// exact solution and the fan degenerates to the classic single-celerity
// pressure-relaxation (Suliciu) solution.

namespace silt {

namespace {

constexpr double kSuppressB = 1e-12;  // below this the solid waves are frozen
constexpr double kGapFactor = 1.1;    // minimum a/b separation (resonance guard)
constexpr int kMaxEnlarge = 25;
constexpr int kMaxNewton = 60;

// Control-flow marker: the current celerity pair admits no positive-depth fan.
struct IllPosed {};

double tau_of(const RelaxState& s) {
    return 1.0 / std::max(s.h, 1e-12);  // dry guard; scenarios never hit it
}

struct Fan {
    std::array<RelaxState, 6> region{};
    std::array<double, 5> speed{};
    std::array<double, 5> exchange{};  // momentum exchange M_w per wave
};

RelaxState make_state(double tau, double u, double pi, double z, double omega) {
    RelaxState s;
    s.h = 1.0 / tau;
    s.hu = u / tau;
    s.pi = pi;
    s.z = z;
    s.omega = omega;
    return s;
}

// b == 0: bed frozen, flow solved by the single-celerity relaxation solution;
// the bed step enters as a centred g h [z] momentum exchange at the contact.
Fan solve_suppressed(const RelaxState& l, const RelaxState& r, double a,
                     double g) {
    const double tl = tau_of(l), tr = tau_of(r);
    const double ul = l.u(0.0), ur = r.u(0.0);

    const double ustar = 0.5 * (ul + ur) + (l.pi - r.pi) / (2.0 * a);
    const double pstar = 0.5 * (l.pi + r.pi) + 0.5 * a * (ul - ur);
    const double tsl = tl + (ustar - ul) / a;
    const double tsr = tr + (ur - ustar) / a;
    if (!(tsl > 0) || !(tsr > 0)) throw IllPosed{};

    Fan f;
    f.region[0] = l;
    f.region[1] = make_state(tsl, ustar, pstar, l.z, l.omega);
    f.region[2] = f.region[1];
    f.region[3] = make_state(tsr, ustar, pstar, r.z, r.omega);
    f.region[4] = f.region[3];
    f.region[5] = r;
    f.speed = {ul - a * tl, ustar, ustar, ustar, ur + a * tr};
    // Centred topography exchange, carried by the (merged) middle wave.
    f.exchange[2] = g * 0.5 * (l.h + r.h) * (r.z - l.z);
    return f;
}

// b > a: solid waves outermost, their speeds fixed by the input states.
Fan solve_solid_outer(const RelaxState& l, const RelaxState& r, double a,
                      double b, double g) {
    const double tl = tau_of(l), tr = tau_of(r);
    const double ul = l.u(0.0), ur = r.u(0.0);
    const double k = g / (a * a - b * b);
    const double kl_side = l.pi + a * a * tl;
    const double kr_side = r.pi + a * a * tr;

    const double m2 = ul - b * tl;
    const double m4 = ur + b * tr;
    const double d = m4 - m2;
    if (!(d > 0)) throw IllPosed{};

    const double jz = r.z - l.z;
    const double jw = r.omega - l.omega;
    // Jump form keeps zstar exactly equal to the inputs when jz = jw = 0.
    const double dzl = (m4 * jz - jw) / d;
    const double dzr = (m2 * jz - jw) / d;
    const double zstar = l.z + dzl;
    const double wstar = l.omega + m2 * dzl;

    const double rad1 = tl * tl + 2.0 * k * dzl;
    const double rad4 = tr * tr + 2.0 * k * dzr;
    if (!(rad1 > 0) || !(rad4 > 0)) throw IllPosed{};
    const double t1 = std::sqrt(rad1);
    const double t4 = std::sqrt(rad4);
    const double u1 = m2 + b * t1;
    const double u4 = m4 - b * t4;
    const double p1 = kl_side - a * a * t1;
    const double p4 = kr_side - a * a * t4;

    // Interior pressure-relaxation fan between states 1 and 4.
    const double ustar = 0.5 * (u1 + u4) + (p1 - p4) / (2.0 * a);
    const double pstar = 0.5 * (p1 + p4) + 0.5 * a * (u1 - u4);
    const double t2 = t1 + (ustar - u1) / a;
    const double t3 = t4 + (u4 - ustar) / a;
    if (!(t2 > 0) || !(t3 > 0)) throw IllPosed{};

    Fan f;
    f.region[0] = l;
    f.region[1] = make_state(t1, u1, p1, zstar, wstar);
    f.region[2] = make_state(t2, ustar, pstar, zstar, wstar);
    f.region[3] = make_state(t3, ustar, pstar, zstar, wstar);
    f.region[4] = make_state(t4, u4, p4, zstar, wstar);
    f.region[5] = r;
    f.speed = {m2, u1 - a * t1, ustar, u4 + a * t4, m4};
    f.exchange[0] = (a * a - b * b) * (t1 - tl);
    f.exchange[4] = (a * a - b * b) * (tr - t4);
    return f;
}

// a > b: fluid waves outermost.  The interior solid speeds (m2, m4) solve
//   R1 = tau1^2 - tau2^2 + tau3^2 - tau4^2 + 2 k jz           = 0
//   R2 = tau1^2 - tau2^2 + 2 k dzl(m2, m4)                    = 0
// where all tau_i are linear in (m2, m4) through the wave invariants.
Fan solve_fluid_outer(const RelaxState& l, const RelaxState& r, double a,
                      double b, double g) {
    const double tl = tau_of(l), tr = tau_of(r);
    const double ul = l.u(0.0), ur = r.u(0.0);
    const double k = g / (a * a - b * b);
    const double kl_side = l.pi + a * a * tl;
    const double kr_side = r.pi + a * a * tr;
    const double kappa = (kr_side - kl_side) / (a * a);
    const double lam = ul - a * tl;  // left fluid speed, invariant
    const double rho = ur + a * tr;  // right fluid speed, invariant
    const double jz = r.z - l.z;
    const double jw = r.omega - l.omega;
    const double amb = a - b;

    struct Eval {
        double t1, t2, t3, t4, dzl, dzr, d, r1, r2;
        bool valid;
    };
    auto eval = [&](double m2, double m4) {
        Eval e{};
        e.t1 = (m2 - lam) / amb;
        e.t4 = (rho - m4) / amb;
        e.t2 = (m4 - m2 - b * kappa) / (2.0 * b);
        e.t3 = (m4 - m2 + b * kappa) / (2.0 * b);
        e.d = m4 - m2;
        e.valid = e.t1 > 0 && e.t2 > 0 && e.t3 > 0 && e.t4 > 0 && e.d > 0;
        if (!e.valid) return e;
        e.dzl = (m4 * jz - jw) / e.d;
        e.dzr = (m2 * jz - jw) / e.d;
        e.r1 = (e.t1 * e.t1 - e.t2 * e.t2) + (e.t3 * e.t3 - e.t4 * e.t4) +
               2.0 * k * jz;
        e.r2 = (e.t1 * e.t1 - e.t2 * e.t2) + 2.0 * k * e.dzl;
        return e;
    };

    // Initial guess: the decoupled single-celerity solution.  On flat-bed,
    // equal-omega data it already satisfies both equations exactly.
    const double u0 = 0.5 * (ul + ur) + (l.pi - r.pi) / (2.0 * a);
    double tsl = tl + (u0 - ul) / a;
    double tsr = tr + (ur - u0) / a;
    const double tfloor = 1e-6 * std::min(tl, tr);
    tsl = std::max(tsl, tfloor);
    tsr = std::max(tsr, tfloor);
    double m2 = u0 - b * tsl;
    double m4 = u0 + b * tsr;

    Eval e = eval(m2, m4);
    if (!e.valid) throw IllPosed{};

    const double tmax = std::max({tl, tr, e.t1, e.t2, e.t3, e.t4});
    const double res_scale = tmax * tmax + std::fabs(2.0 * k * jz) +
                             std::fabs(2.0 * k * e.dzl) + std::fabs(2.0 * k * e.dzr);
    const double tol = 1e-13 * res_scale + 1e-300;

    auto res_norm = [](const Eval& v) {
        return std::max(std::fabs(v.r1), std::fabs(v.r2));
    };

    int it = 0;
    while (res_norm(e) > tol) {
        if (++it > kMaxNewton) throw IllPosed{};
        // Analytic Jacobian of (R1, R2) in (m2, m4).
        const double j11 = 2.0 * e.t1 / amb - kappa / b;
        const double j12 = 2.0 * e.t4 / amb + kappa / b;
        const double j21 = 2.0 * e.t1 / amb + e.t2 / b + 2.0 * k * e.dzl / e.d;
        const double j22 = -e.t2 / b + 2.0 * k * (jz - e.dzl) / e.d;
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0 || !std::isfinite(det)) throw IllPosed{};
        const double step2 = (e.r1 * j22 - e.r2 * j12) / det;
        const double step4 = (e.r2 * j11 - e.r1 * j21) / det;

        // Damped update: keep the fan positive and the residual decreasing.
        double damp = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            const Eval trial = eval(m2 - damp * step2, m4 - damp * step4);
            if (trial.valid &&
                (res_norm(trial) < res_norm(e) || res_norm(trial) <= tol)) {
                m2 -= damp * step2;
                m4 -= damp * step4;
                e = trial;
                accepted = true;
                break;
            }
            damp *= 0.5;
        }
        if (!accepted) throw IllPosed{};
    }

    const double ustar = 0.5 * (m2 + m4 - b * kappa);
    const double zstar = l.z + e.dzl;
    const double wstar = l.omega + m2 * e.dzl;
    const double u1 = lam + a * e.t1;
    const double u4 = rho - a * e.t4;
    const double p1 = kl_side - a * a * e.t1;
    const double p2 = kl_side - a * a * e.t2;
    const double p3 = kr_side - a * a * e.t3;
    const double p4 = kr_side - a * a * e.t4;

    Fan f;
    f.region[0] = l;
    f.region[1] = make_state(e.t1, u1, p1, l.z, l.omega);
    f.region[2] = make_state(e.t2, ustar, p2, zstar, wstar);
    f.region[3] = make_state(e.t3, ustar, p3, zstar, wstar);
    f.region[4] = make_state(e.t4, u4, p4, r.z, r.omega);
    f.region[5] = r;
    f.speed = {lam, m2, ustar, m4, rho};
    f.exchange[1] = (a * a - b * b) * (e.t2 - e.t1);
    f.exchange[3] = (a * a - b * b) * (e.t4 - e.t3);
    return f;
}

}  // namespace

InterfaceSolution interface_riemann(const RelaxState& left,
                                    const RelaxState& right,
                                    const CelerityPair& cel, double gravity) {
    InterfaceSolution out;
    out.region[0] = left;
    out.region[5] = right;
    out.celerity = cel;
    if (cel.a <= 0.0) return out;  // both sides dry: inert interface

    double a = cel.a;
    double b = cel.b;
    for (int attempt = 0; attempt <= kMaxEnlarge; ++attempt) {
        // Resonance guard: the coupling constant k = g/(a^2 - b^2) needs the
        // celerities separated.  Bounds are lower bounds, so pushing the
        // larger one up is always admissible.
        double ae = a, be = b;
        if (be >= kSuppressB) {
            if (ae >= be)
                ae = std::max(ae, kGapFactor * be);
            else
                be = std::max(be, kGapFactor * ae);
        }
        try {
            Fan f;
            if (be < kSuppressB)
                f = solve_suppressed(left, right, ae, gravity);
            else if (be > ae)
                f = solve_solid_outer(left, right, ae, be, gravity);
            else
                f = solve_fluid_outer(left, right, ae, be, gravity);

            out.region = f.region;
            out.speed = f.speed;
            out.celerity = {ae, be};
            out.enlargements = attempt;

            // Sample the fan at xi = 0: the region left of the first wave
            // with non-negative speed (waves sitting exactly at 0 count as
            // right-going, so their exchange lands in the right cell).
            int rg = 5;
            for (int w = 0; w < 5; ++w) {
                if (f.speed[w] >= 0.0) {
                    rg = w;
                    break;
                }
            }
            const RelaxState& s0 = f.region[rg];
            out.flux_h = s0.hu;
            out.flux_z = (be < kSuppressB) ? 0.0 : s0.omega;
            const double base = s0.hu * s0.u(0.0) + s0.pi;
            double mneg = 0, mpos = 0;
            for (int w = 0; w < 5; ++w) {
                if (f.speed[w] < 0.0)
                    mneg += f.exchange[w];
                else
                    mpos += f.exchange[w];
            }
            out.flux_hu_left = base + mneg;
            out.flux_hu_right = base - mpos;
            return out;
        } catch (const IllPosed&) {
            a *= 2.0;
            if (b > 0) b *= 2.0;
        }
    }

    std::ostringstream os;
    os << "interface_riemann: no positive fan after " << kMaxEnlarge
       << " celerity enlargements (hL=" << left.h << " uL=" << left.u(0.0)
       << " zL=" << left.z << " | hR=" << right.h << " uR=" << right.u(0.0)
       << " zR=" << right.z << ")";
    throw std::runtime_error(os.str());
}

}  // namespace silt
