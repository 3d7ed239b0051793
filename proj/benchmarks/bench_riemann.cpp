#include <benchmark/benchmark.h>

#include "silt/relax_state.hpp"
#include "silt/riemann.hpp"

using namespace silt;

namespace {

struct Face {
    RelaxState l, r;
    CelerityPair cel;
};

// Subcritical transporting pair: fluid waves outrun the bed waves, so the
// inner states come from the damped Newton branch.
Face fluid_outer_face() {
    const Physics phys;
    const BedloadLaw law = BedloadLaw::grass(1.0, 3.0);
    const FlowState a{9.6, 10.0, 0.0, 0.4};
    const FlowState b{9.9, 10.0, 0.0, 0.1};
    Face f{equilibrate(a, law, phys), equilibrate(b, law, phys), {}};
    f.cel = celerity_bounds(f.l, f.r, law, phys, 1.05);
    return f;
}

// Same states with the bed celerity pushed past the fluid one: the outer
// waves become bed waves and the fan closes in closed form.
Face solid_outer_face() {
    Face f = fluid_outer_face();
    f.cel.b = 3.0 * f.cel.a;
    return f;
}

// Motionless bed: the bed waves collapse and the fan is plain shallow water.
Face suppressed_face() {
    const Physics phys;
    const BedloadLaw law = BedloadLaw::grass(0.0);
    const FlowState a{2.0, 1.5, 0.0, 0.3};
    const FlowState b{1.0, -0.5, 0.0, 0.1};
    Face f{equilibrate(a, law, phys), equilibrate(b, law, phys), {}};
    f.cel = celerity_bounds(f.l, f.r, law, phys, 1.05);
    return f;
}

void solve_loop(benchmark::State& st, const Face& f) {
    const double g = Physics{}.gravity;
    for (auto _ : st) {
        const InterfaceSolution s = interface_riemann(f.l, f.r, f.cel, g);
        benchmark::DoNotOptimize(s.flux_h);
        benchmark::DoNotOptimize(s.flux_hu_left);
        benchmark::DoNotOptimize(s.flux_z);
    }
    st.counters["solves_per_s"] =
        benchmark::Counter(static_cast<double>(st.iterations()),
                           benchmark::Counter::kIsRate);
}

void BM_InterfaceFluidOuter(benchmark::State& st) {
    solve_loop(st, fluid_outer_face());
}

void BM_InterfaceSolidOuter(benchmark::State& st) {
    solve_loop(st, solid_outer_face());
}

void BM_InterfaceSuppressed(benchmark::State& st) {
    solve_loop(st, suppressed_face());
}

void BM_Equilibrate(benchmark::State& st) {
    const Physics phys;
    const BedloadLaw law = BedloadLaw::grass(1.0, 3.0);
    const FlowState cell{9.6, 10.0, 0.3, 0.4};
    for (auto _ : st) {
        const RelaxState s = equilibrate(cell, law, phys);
        benchmark::DoNotOptimize(s.omega);
    }
}

}  // namespace

BENCHMARK(BM_InterfaceFluidOuter);
BENCHMARK(BM_InterfaceSolidOuter);
BENCHMARK(BM_InterfaceSuppressed);
BENCHMARK(BM_Equilibrate);

BENCHMARK_MAIN();
