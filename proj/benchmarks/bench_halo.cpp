#include <benchmark/benchmark.h>

#include <vector>

#include "silt/parallel.hpp"
#include "silt/scenarios.hpp"

using namespace silt;

namespace {

// Ghost-strip refresh across a 2x2 block decomposition; this is the only
// inter-worker traffic a parallel step pays besides the dt reduction.
void BM_HaloExchange(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    const Scenario sc = build_bump_2d(n, n);
    Topology topo;
    topo.px = 2;
    topo.py = 2;
    std::vector<Subdomain> parts = partition(sc.initial, topo);

    for (auto _ : st) {
        halo_exchange(parts, topo, true);
        benchmark::DoNotOptimize(parts[0].field.at(-1, -1));
    }
    st.counters["exchanges_per_s"] =
        benchmark::Counter(static_cast<double>(st.iterations()),
                           benchmark::Counter::kIsRate);
}

}  // namespace

BENCHMARK(BM_HaloExchange)->Arg(128)->Arg(256)->Unit(benchmark::kMicrosecond);
