#include <benchmark/benchmark.h>

#include "silt/scenarios.hpp"
#include "silt/stepper.hpp"

using namespace silt;

namespace {

// Full production step on a periodic dune reach: ghost fill, CFL, update.
void BM_Step1D(benchmark::State& st) {
    Scenario sc = build_dune_1d(static_cast<int>(st.range(0)));
    sc.bc[static_cast<int>(Side::West)] = BoundarySpec::periodic();
    sc.bc[static_cast<int>(Side::East)] = BoundarySpec::periodic();
    PaddedField f = PaddedField::from_field(sc.initial);

    for (auto _ : st) {
        apply_bcs(f, sc.bc);
        const double dt = cfl_dt(f, sc.law, sc.phys, sc.cfl);
        step_1d(f, sc.law, sc.phys, dt, sc.safety);
    }
    st.counters["cells_per_s"] = benchmark::Counter(
        static_cast<double>(st.iterations()) * st.range(0),
        benchmark::Counter::kIsRate);
}

void BM_Step2D(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const Scenario sc = build_bump_2d(n, n);
    PaddedField f = PaddedField::from_field(sc.initial);

    for (auto _ : st) {
        apply_bcs(f, sc.bc);
        const double dt = cfl_dt(f, sc.law, sc.phys, sc.cfl);
        step_2d(f, sc.law, sc.phys, dt, sc.safety);
    }
    st.counters["cells_per_s"] = benchmark::Counter(
        static_cast<double>(st.iterations()) * n * n,
        benchmark::Counter::kIsRate);
}

void BM_CflScan2D(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const Scenario sc = build_bump_2d(n, n);
    const PaddedField f = PaddedField::from_field(sc.initial);

    for (auto _ : st) {
        benchmark::DoNotOptimize(cfl_dt(f, sc.law, sc.phys, sc.cfl));
    }
    st.counters["cells_per_s"] = benchmark::Counter(
        static_cast<double>(st.iterations()) * n * n,
        benchmark::Counter::kIsRate);
}

}  // namespace

BENCHMARK(BM_Step1D)->Arg(1000)->Arg(4000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Step2D)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CflScan2D)->Arg(128)->Unit(benchmark::kMicrosecond);
