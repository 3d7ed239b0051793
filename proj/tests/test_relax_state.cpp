#include <cmath>
#include <random>

#include "doctest.h"
#include "silt/relax_state.hpp"

using namespace silt;

namespace {
constexpr double kG = 9.81;

RelaxState make_eq(double h, double un, double ut, const BedloadLaw& law,
                   const Physics& phys, double zb = 0.0) {
    FlowState cell;
    cell.h = h;
    cell.hu = h * un;
    cell.hv = h * ut;
    cell.zb = zb;
    return equilibrate(cell, law, phys);
}
}  // namespace

TEST_SUITE_BEGIN("relax_state");

TEST_CASE("equilibrate: relaxed variables sit on the closure manifold") {
    const BedloadLaw law = BedloadLaw::grass(0.5, 3.0);
    const Physics phys;
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> hh(0.1, 6.0), vv(-4.0, 4.0);

    for (int k = 0; k < 200; ++k) {
        FlowState cell;
        cell.h = hh(rng);
        cell.hu = cell.h * vv(rng);
        cell.hv = cell.h * vv(rng);
        cell.zb = vv(rng);

        const RelaxState sx = equilibrate(cell, law, phys, Axis::X);
        CHECK(sx.pi == 0.5 * kG * cell.h * cell.h);
        CHECK(sx.h == cell.h);
        CHECK(sx.hu == cell.hu);
        CHECK(sx.z == cell.zb);
        const double u = cell.hu / cell.h, v = cell.hv / cell.h;
        CHECK(sx.omega ==
              doctest::Approx(normal_flux(law, cell.h, u, v, kG))
                  .epsilon(1e-15));

        // axis swap: normal/transverse velocity roles exchange
        const RelaxState sy = equilibrate(cell, law, phys, Axis::Y);
        CHECK(sy.hu == cell.hv);
        CHECK(sy.pi == sx.pi);
        CHECK(sy.omega ==
              doctest::Approx(normal_flux(law, cell.h, v, u, kG))
                  .epsilon(1e-15));
    }
}

TEST_CASE("equilibrate: dry cell declares no motion") {
    const BedloadLaw law = BedloadLaw::grass(1.0, 3.0);
    const Physics phys;
    FlowState cell;
    cell.h = 0.5 * phys.h_dry;
    cell.hu = 1.0;  // stale discharge in a dry cell must not produce a rate
    const RelaxState s = equilibrate(cell, law, phys);
    CHECK(s.omega == 0.0);
}

TEST_CASE("celerity bounds: worked fluid and solid values") {
    // symmetric state h = 0.5, u = 3.4, Grass a_g = 0.001, m_g = 3:
    //   a = 1.05 * h sqrt(g h) = 1.05 * 0.5 * sqrt(4.905)
    //   dq/du = 3 a_g u^2 = 0.034680
    //   b = 1.05 * sqrt((hu)^2 + g h^2 dq/du)
    //     = 1.05 * sqrt(1.7^2 + 9.81 * 0.25 * 0.034680) = 1.8110758133634273
    const BedloadLaw law = BedloadLaw::grass(0.001, 3.0);
    const Physics phys;
    const RelaxState s = make_eq(0.5, 3.4, 0.0, law, phys);
    const CelerityPair c = celerity_bounds(s, s, law, phys, 1.05);

    CHECK(c.a == doctest::Approx(1.05 * 0.5 * std::sqrt(kG * 0.5))
                     .epsilon(1e-14));
    CHECK(c.b == doctest::Approx(1.8110758133634273).epsilon(1e-13));
    CHECK(std::sqrt(1.7 * 1.7 + kG * 0.25 * 0.034680) ==
          doctest::Approx(1.7248341079651688).epsilon(1e-14));
}

TEST_CASE("celerity bounds: side-wise maxima and safety scaling") {
    const BedloadLaw law = BedloadLaw::grass(0.01, 3.0);
    const Physics phys;
    const RelaxState deep = make_eq(4.0, 0.5, 0.0, law, phys);
    const RelaxState fast = make_eq(0.8, 5.0, 0.0, law, phys);

    const CelerityPair lr = celerity_bounds(deep, fast, law, phys, 1.05);
    const CelerityPair rl = celerity_bounds(fast, deep, law, phys, 1.05);
    CHECK(lr.a == rl.a);  // symmetric in the two sides
    CHECK(lr.b == rl.b);
    CHECK(lr.a == doctest::Approx(1.05 * 4.0 * std::sqrt(kG * 4.0))
                      .epsilon(1e-14));  // deep side dominates a

    const CelerityPair s1 = celerity_bounds(deep, fast, law, phys, 1.0);
    CHECK(lr.a == doctest::Approx(1.05 * s1.a).epsilon(1e-14));
    CHECK(lr.b == doctest::Approx(1.05 * s1.b).epsilon(1e-14));

    // subcharacteristic property: a and b dominate their wave families
    for (const auto* s : {&deep, &fast}) {
        CHECK(lr.a >= s->h * std::sqrt(kG * s->h));
        const double dq =
            normal_flux_derivative(law, s->h, s->u(phys.h_dry), 0.0, kG);
        CHECK(lr.b * lr.b >=
              s->hu * s->hu + kG * s->h * s->h * dq - 1e-12);
    }
}

TEST_CASE("celerity bounds: transport-free interface pins the bed") {
    const Physics phys;

    // a_g = 0: no transport whatever the velocity
    const BedloadLaw inert = BedloadLaw::grass(0.0, 3.0);
    const RelaxState moving = make_eq(1.0, 2.0, 0.0, inert, phys);
    CelerityPair c = celerity_bounds(moving, moving, inert, phys, 1.05);
    CHECK(c.b == 0.0);
    CHECK(c.a > 0.0);

    // below-threshold Shields state: rate and derivative both vanish
    FrictionLaw fric{FrictionModel::DarcyWeisbach, 0.03};
    const BedloadLaw mpm =
        BedloadLaw::shields(ShieldsFormula::MeyerPeterMuller, fric, 0.047,
                            1e-3, 2.65);
    const RelaxState slow = make_eq(1.0, 0.05, 0.0, mpm, phys);
    CHECK(dimensional_flux(mpm, 1.0, 0.05, kG) == 0.0);
    c = celerity_bounds(slow, slow, mpm, phys, 1.05);
    CHECK(c.b == 0.0);

    // same law above threshold must move
    const RelaxState quick = make_eq(1.0, 3.0, 0.0, mpm, phys);
    c = celerity_bounds(quick, quick, mpm, phys, 1.05);
    CHECK(c.b > 0.0);

    // one moving side is enough to unfreeze the bed
    c = celerity_bounds(slow, quick, mpm, phys, 1.05);
    CHECK(c.b > 0.0);
}

TEST_CASE("celerity bounds: disequilibrium omega keeps the solid wave alive") {
    // A state whose instantaneous rate is zero but whose relaxed omega is not
    // (mid-step transients) must still get b > 0 or the solid waves could not
    // carry the stored rate.
    const BedloadLaw inert = BedloadLaw::grass(0.0, 3.0);
    const Physics phys;
    RelaxState s = make_eq(1.0, 2.0, 0.0, inert, phys);
    s.omega = 0.3;
    const CelerityPair c = celerity_bounds(s, s, inert, phys, 1.05);
    CHECK(c.b > 0.0);
}

TEST_CASE("celerity bounds: dry handling") {
    const BedloadLaw law = BedloadLaw::grass(1.0, 3.0);
    const Physics phys;
    RelaxState dry;
    dry.h = 0.0;
    const RelaxState wet = make_eq(1.0, 1.0, 0.0, law, phys);

    const CelerityPair both = celerity_bounds(dry, dry, law, phys, 1.05);
    CHECK(both.a == 0.0);
    CHECK(both.b == 0.0);

    // one wet side: bounds come from it alone
    const CelerityPair one = celerity_bounds(dry, wet, law, phys, 1.05);
    const CelerityPair ref = celerity_bounds(wet, wet, law, phys, 1.05);
    CHECK(one.a == ref.a);
    CHECK(one.b == ref.b);
}

TEST_CASE("celerity bounds: transverse velocity feeds the planar derivative") {
    const BedloadLaw law = BedloadLaw::grass(0.1, 3.0);
    const Physics phys;
    const RelaxState s = make_eq(1.0, 1.0, 0.0, law, phys);

    const CelerityPair plain = celerity_bounds(s, s, law, phys, 1.05);
    const CelerityPair swirl = celerity_bounds(s, s, 2.0, 2.0, law, phys, 1.05);
    CHECK(swirl.b > plain.b);  // speed grows, so does dq/du_n
    CHECK(swirl.a == plain.a);

    const double dq = normal_flux_derivative(law, 1.0, 1.0, 2.0, kG);
    CHECK(swirl.b ==
          doctest::Approx(1.05 * std::sqrt(1.0 + kG * dq)).epsilon(1e-13));
}

TEST_SUITE_END();
