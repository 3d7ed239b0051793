#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "silt/parallel.hpp"

using namespace silt;

namespace {

Field random_field(int nx, int ny, unsigned seed) {
    Field f(ny > 1 ? Grid::make_2d(nx, ny, nx, ny) : Grid::make_1d(nx, nx));
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> d(0.5, 2.0);
    for (auto& c : f.cells) c = {d(rng), d(rng), d(rng), d(rng)};
    return f;
}

bool same_bits(const Field& a, const Field& b) {
    if (a.grid.nx != b.grid.nx || a.grid.ny != b.grid.ny) return false;
    for (std::size_t k = 0; k < a.cells.size(); ++k) {
        if (a.cells[k].h != b.cells[k].h) return false;
        if (a.cells[k].hu != b.cells[k].hu) return false;
        if (a.cells[k].hv != b.cells[k].hv) return false;
        if (a.cells[k].zb != b.cells[k].zb) return false;
    }
    return true;
}

// Small periodic ring with a moving hump and live transport.
Scenario ring_scenario() {
    Scenario sc;
    sc.name = "ring";
    sc.grid = Grid::make_1d(32.0, 32);
    sc.initial = Field(sc.grid);
    for (int i = 0; i < 32; ++i) {
        const double x = sc.grid.x_center(i);
        FlowState& c = sc.initial.at(i);
        c.zb = 0.1 * std::sin(2.0 * M_PI * x / 32.0);
        c.h = 1.0 - c.zb + 0.05 * std::cos(2.0 * M_PI * x / 32.0);
        c.hu = 0.4 * c.h;
    }
    sc.law = BedloadLaw::grass(0.05, 3.0);
    sc.t_end = 2.0;
    sc.bc[0] = sc.bc[1] = BoundarySpec::periodic();
    return sc;
}

}  // namespace

TEST_SUITE_BEGIN("parallel");

TEST_CASE("topology: neighbour relation with and without wrapping") {
    Topology t;
    t.px = 3;
    t.py = 2;
    CHECK(t.size() == 6);
    CHECK(t.rank_of(1, 1) == 4);

    CHECK(t.neighbor(4, 1, 0) == 5);
    CHECK(t.neighbor(4, -1, 0) == 3);
    CHECK(t.neighbor(4, 0, -1) == 1);
    CHECK(t.neighbor(5, 1, 0) == -1);   // east edge, not periodic
    CHECK(t.neighbor(0, 0, -1) == -1);  // south edge
    CHECK(t.neighbor(0, -1, -1) == -1);

    t.periodic_x = true;
    CHECK(t.neighbor(5, 1, 0) == 3);    // wraps to rx = 0 of the same row
    CHECK(t.neighbor(3, -1, 0) == 5);
    CHECK(t.neighbor(0, 0, -1) == -1);  // y still clamped

    t.periodic_y = true;
    CHECK(t.neighbor(0, 0, -1) == 3);
    CHECK(t.neighbor(0, -1, -1) == 5);  // diagonal wrap
}

TEST_CASE("partition: remainder cells go to the lowest coordinates") {
    const Field f = random_field(10, 1, 41);
    Topology t;
    t.px = 3;
    const std::vector<Subdomain> parts = partition(f, t);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].field.grid.nx == 4);
    CHECK(parts[1].field.grid.nx == 3);
    CHECK(parts[2].field.grid.nx == 3);
    CHECK(parts[0].i0 == 0);
    CHECK(parts[1].i0 == 4);
    CHECK(parts[2].i0 == 7);
    for (const Subdomain& sd : parts)
        for (int i = 0; i < sd.field.grid.nx; ++i)
            CHECK(sd.field.at(i).h == f.at(sd.i0 + i).h);

    const Field f2 = random_field(10, 7, 42);
    Topology t2;
    t2.px = 3;
    t2.py = 2;
    const std::vector<Subdomain> p2 = partition(f2, t2);
    REQUIRE(p2.size() == 6);
    CHECK(p2[0].field.grid.ny == 4);  // 7 = 4 + 3
    CHECK(p2[3].field.grid.ny == 3);
    CHECK(p2[3].j0 == 4);
    CHECK(p2[4].rx == 1);
    CHECK(p2[4].ry == 1);
    CHECK(p2[4].rank == 4);
    // local grid spacing matches the global grid
    CHECK(p2[0].field.grid.dx == f2.grid.dx);
    CHECK(p2[0].field.grid.dy == f2.grid.dy);
}

TEST_CASE("partition: validation") {
    const Field f = random_field(3, 1, 43);
    Topology bad;
    bad.px = 4;  // more workers than cells
    CHECK_THROWS_AS(partition(f, bad), std::invalid_argument);

    Topology two_rows;
    two_rows.px = 1;
    two_rows.py = 2;
    CHECK_THROWS_AS(partition(f, two_rows), std::invalid_argument);

    Topology zero;
    zero.px = 0;
    CHECK_THROWS_AS(partition(f, zero), std::invalid_argument);
}

TEST_CASE("gather inverts partition bit for bit") {
    const Field f = random_field(11, 6, 44);
    Topology t;
    t.px = 3;
    t.py = 2;
    const std::vector<Subdomain> parts = partition(f, t);
    const Field back = gather(parts, t, f.grid);
    CHECK(same_bits(f, back));
}

TEST_CASE("halo exchange: ghosts mirror the neighbours' interiors") {
    const Field f = random_field(9, 6, 45);
    Topology t;
    t.px = 3;
    t.py = 2;
    std::vector<Subdomain> parts = partition(f, t);

    // sentinel the whole ghost frame to observe what the exchange touches
    for (Subdomain& sd : parts) {
        const int nx = sd.field.grid.nx, ny = sd.field.grid.ny;
        for (int i = -1; i <= nx; ++i) {
            sd.field.at(i, -1).h = -7.0;
            sd.field.at(i, ny).h = -7.0;
        }
        for (int j = -1; j <= ny; ++j) {
            sd.field.at(-1, j).h = -7.0;
            sd.field.at(nx, j).h = -7.0;
        }
    }
    halo_exchange(parts, t, /*corners=*/false);

    for (const Subdomain& sd : parts) {
        const int nx = sd.field.grid.nx, ny = sd.field.grid.ny;
        // interior ghost strips hold the neighbour's edge cells == the global
        // field next to this block; physical sides keep the sentinel
        for (int j = 0; j < ny; ++j) {
            const int gj = sd.j0 + j;
            if (sd.rx > 0)
                CHECK(sd.field.at(-1, j).h == f.at(sd.i0 - 1, gj).h);
            else
                CHECK(sd.field.at(-1, j).h == -7.0);
            if (sd.rx < t.px - 1)
                CHECK(sd.field.at(nx, j).h == f.at(sd.i0 + nx, gj).h);
            else
                CHECK(sd.field.at(nx, j).h == -7.0);
        }
        for (int i = 0; i < nx; ++i) {
            const int gi = sd.i0 + i;
            if (sd.ry > 0)
                CHECK(sd.field.at(i, -1).h == f.at(gi, sd.j0 - 1).h);
            else
                CHECK(sd.field.at(i, -1).h == -7.0);
            if (sd.ry < t.py - 1)
                CHECK(sd.field.at(i, ny).h == f.at(gi, sd.j0 + ny).h);
            else
                CHECK(sd.field.at(i, ny).h == -7.0);
        }
        // corners were not requested
        CHECK(sd.field.at(-1, -1).h == -7.0);
        CHECK(sd.field.at(nx, ny).h == -7.0);
    }

    // corner exchange fills interior-diagonal corners
    halo_exchange(parts, t, /*corners=*/true);
    const Subdomain& mid = parts[0];  // rx = 0, ry = 0: NE corner is interior
    const int nx0 = mid.field.grid.nx, ny0 = mid.field.grid.ny;
    CHECK(mid.field.at(nx0, ny0).h == f.at(mid.i0 + nx0, mid.j0 + ny0).h);
    CHECK(mid.field.at(-1, -1).h == -7.0);  // still physical
}

TEST_CASE("halo exchange: periodic wrap goes through the topology") {
    const Field f = random_field(8, 1, 46);
    Topology t;
    t.px = 2;
    t.periodic_x = true;
    std::vector<Subdomain> parts = partition(f, t);
    halo_exchange(parts, t, false);
    CHECK(parts[0].field.at(-1).h == f.at(7).h);  // west ghost wraps
    CHECK(parts[1].field.at(4).h == f.at(0).h);   // east ghost wraps
}

TEST_CASE("global_dt: deterministic minimum") {
    CHECK(global_dt({0.3, 0.1, 0.2}) == 0.1);
    CHECK(global_dt({0.25}) == 0.25);
    CHECK_THROWS_AS(global_dt({}), std::invalid_argument);
}

TEST_CASE("worker layouts: bit-identical fields") {
    const Scenario dune = build_dune_1d(60);
    RunOptions opt;
    opt.t_end = 20.0;

    const RunResult serial = run_serial(dune, opt);
    CHECK(serial.time == 20.0);
    for (int px : {1, 2, 3, 5}) {
        const RunResult par = run_parallel(dune, px, 1, opt);
        CHECK(par.steps == serial.steps);
        CHECK(par.time == serial.time);
        CHECK(same_bits(par.final_field, serial.final_field));
        CHECK(static_cast<int>(par.timing.size()) == px);
        for (const WorkerTiming& w : par.timing) CHECK(w.steps == par.steps);
    }

    const Scenario bump = build_bump_2d(18, 12, 1.0, 12.0);
    const RunResult s2 = run_serial(bump, {});
    for (auto [px, py] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 2}}) {
        const RunResult par = run_parallel(bump, px, py, {});
        CHECK(par.steps == s2.steps);
        CHECK(same_bits(par.final_field, s2.final_field));
    }
}

TEST_CASE("corner exchange flag cannot change results") {
    const Scenario bump = build_bump_2d(16, 10, 1.0, 8.0);
    RunOptions on, off;
    off.exchange_corners = false;
    const RunResult a = run_parallel(bump, 2, 2, on);
    const RunResult b = run_parallel(bump, 2, 2, off);
    CHECK(same_bits(a.final_field, b.final_field));
}

TEST_CASE("periodic scenario: wrap and conservation across layouts") {
    const Scenario ring = ring_scenario();
    const RunResult serial = run_serial(ring, {});
    for (int px : {2, 4}) {
        const RunResult par = run_parallel(ring, px, 1, {});
        CHECK(same_bits(par.final_field, serial.final_field));
    }

    double h0 = 0, h1 = 0, z0 = 0, z1 = 0;
    for (int i = 0; i < 32; ++i) {
        h0 += ring.initial.at(i).h;
        z0 += ring.initial.at(i).zb;
        h1 += serial.final_field.at(i).h;
        z1 += serial.final_field.at(i).zb;
    }
    CHECK(h1 == doctest::Approx(h0).epsilon(1e-13));
    CHECK(z1 == doctest::Approx(z0).epsilon(1e-12).scale(1.0));
    // and the run did something
    CHECK(std::abs(serial.final_field.at(5).h - ring.initial.at(5).h) > 1e-8);
}

TEST_CASE("snapshots land exactly and sample the global field") {
    const Scenario dune = build_dune_1d(50);
    RunOptions opt;
    opt.t_end = 10.0;
    opt.snapshot_times = {0.0, 4.5, 10.0};
    std::vector<double> seen;
    std::vector<Field> fields;
    opt.on_snapshot = [&](double t, const Field& f) {
        seen.push_back(t);
        fields.push_back(f);
    };

    const RunResult res = run_parallel(dune, 2, 1, opt);
    REQUIRE(seen.size() == 3);
    CHECK(seen[0] == 0.0);
    CHECK(seen[1] == 4.5);  // exact landing, no accumulation drift
    CHECK(seen[2] == 10.0);
    CHECK(same_bits(fields[0], dune.initial));
    CHECK(same_bits(fields[2], res.final_field));
    CHECK(fields[1].grid.nx == 50);

    // serial driver produces the very same snapshot trajectory
    std::vector<Field> ser;
    opt.on_snapshot = [&](double, const Field& f) { ser.push_back(f); };
    run_serial(dune, opt);
    REQUIRE(ser.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(same_bits(ser[k], fields[k]));
}

TEST_CASE("run options: overrides and validation") {
    const Scenario dune = build_dune_1d(40);

    RunOptions capped;
    capped.max_steps = 3;
    const RunResult res = run_serial(dune, capped);
    CHECK(res.steps == 3);
    CHECK(res.time < dune.t_end);

    RunOptions zero;
    zero.t_end = 0.0;
    const RunResult none = run_serial(dune, zero);
    CHECK(none.steps == 0);
    CHECK(same_bits(none.final_field, dune.initial));

    RunOptions neg;
    neg.t_end = 5.0;
    neg.cfl = -1;  // keep scenario value: runs fine
    CHECK_NOTHROW(run_serial(dune, neg));

    CHECK_THROWS_AS(run_parallel(dune, 0, 1, {}), std::invalid_argument);
    CHECK_THROWS_AS(run_parallel(dune, 1, 2, {}), std::invalid_argument);

    Scenario half_periodic = ring_scenario();
    half_periodic.bc[1] = BoundarySpec::outflow();
    CHECK_THROWS_AS(run_parallel(half_periodic, 2, 1, {}),
                    std::invalid_argument);
}

TEST_SUITE_END();
