#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "silt/io.hpp"

using namespace silt;

namespace {

RunConfig full_config() {
    RunConfig c;
    c.scenario = "bump2d";
    c.cells_x = 120;
    c.cells_y = 80;
    c.t_end = 42.5;
    c.cfl = 0.45;
    c.safety = 1.1;
    c.gravity = 9.7;
    c.workers_x = 2;
    c.workers_y = 3;
    c.law = "mpm";
    c.a_g = 0.7;
    c.m_g = 2.5;
    c.tau_cr = 0.05;
    c.d_s = 2e-3;
    c.rel_density = 2.6;
    c.friction = "manning";
    c.friction_coef = 0.03;
    c.out_dir = "/tmp/out";
    c.snap_every = 5.0;
    c.snap_at = {1.0, 2.5};
    c.max_steps = 1000;
    c.corner_exchange = false;
    c.seed = 77;
    return c;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_SUITE_BEGIN("io");

TEST_CASE("config: emit/parse round trip") {
    const RunConfig c = full_config();
    CHECK(parse_config(emit_config(c)) == c);

    RunConfig sparse;
    sparse.scenario = "dune1d";
    sparse.t_end = 7.0;
    CHECK(parse_config(emit_config(sparse)) == sparse);

    RunConfig empty;
    CHECK(parse_config(emit_config(empty)) == empty);
    CHECK(parse_config("") == empty);
}

TEST_CASE("config: parsing details") {
    const RunConfig c = parse_config(
        "# comment line\n"
        "scenario = antidune1d\n"
        "\n"
        "cells = 600\n"
        "t_end = 12.5   # trailing comment\n"
        "snap_at = 1, 2, 3.5\n"
        "corner_exchange = off\n");
    CHECK(c.scenario == "antidune1d");
    CHECK(c.cells_x == 600);
    CHECK(!c.cells_y.has_value());
    CHECK(c.t_end == 12.5);
    CHECK(c.snap_at == std::vector<double>{1.0, 2.0, 3.5});
    CHECK(c.corner_exchange == false);

    // 2D cell counts
    CHECK(parse_config("cells = 200x100\n").cells_y == 100);
    CHECK(parse_config("workers = 4x2\n").workers_x == 4);
    CHECK(parse_config("corner_exchange = on\n").corner_exchange == true);
}

TEST_CASE("config: errors name the offending line") {
    CHECK_THROWS_WITH_AS(parse_config("scenario = dune1d\nbogus_key = 3\n"),
                         doctest::Contains("line 2"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_config("t_end = fast\n"),
                         doctest::Contains("line 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("seed = -4\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config("scenario dune1d\n"), std::invalid_argument);
}

TEST_CASE("config: file variant and merge layering") {
    const auto path = temp_file("silt_cfg_test.txt");
    {
        std::ofstream out(path);
        out << "scenario = dune1d\ncells = 500\ncfl = 0.4\n";
    }
    const RunConfig file = parse_config_file(path.string());
    CHECK(file.scenario == "dune1d");
    CHECK(file.cells_x == 500);

    RunConfig cli;
    cli.cfl = 0.3;  // overrides the file
    cli.t_end = 9.0;
    const RunConfig merged = merge_config(file, cli);
    CHECK(merged.scenario == "dune1d");
    CHECK(merged.cells_x == 500);
    CHECK(merged.cfl == 0.3);
    CHECK(merged.t_end == 9.0);

    std::filesystem::remove(path);
    CHECK_THROWS_AS(parse_config_file(path.string()), std::invalid_argument);
}

TEST_CASE("scenario_from_config applies overrides") {
    RunConfig c;
    c.scenario = "dune1d";
    c.cells_x = 250;
    c.t_end = 33.0;
    c.cfl = 0.25;
    c.a_g = 0.5;
    const Scenario sc = scenario_from_config(c);
    CHECK(sc.grid.nx == 250);
    CHECK(sc.t_end == 33.0);
    CHECK(sc.cfl == 0.25);
    CHECK(sc.law.a_g == 0.5);

    // gravity reaches the head-balance initialisation
    RunConfig g;
    g.scenario = "antidune1d";
    g.cells_x = 100;
    g.gravity = 4.0;
    const Scenario low = scenario_from_config(g);
    CHECK(low.phys.gravity == 4.0);
    const Scenario ref = scenario_from_config([] {
        RunConfig r;
        r.scenario = "antidune1d";
        r.cells_x = 100;
        return r;
    }());
    CHECK(std::abs(low.initial.at(37).h - ref.initial.at(37).h) > 1e-3);

    RunConfig none;
    CHECK_THROWS_WITH_AS(scenario_from_config(none),
                         doctest::Contains("no scenario"),
                         std::invalid_argument);

    // range validation happens when the scenario is materialized
    auto bad = [](auto&&... kv) {
        RunConfig b;
        b.scenario = "dune1d";
        b.cells_x = 10;
        (kv(b), ...);
        return b;
    };
    CHECK_THROWS_AS(
        scenario_from_config(bad([](RunConfig& b) { b.cfl = 1.5; })),
        std::invalid_argument);
    CHECK_THROWS_AS(
        scenario_from_config(bad([](RunConfig& b) { b.cfl = 0.0; })),
        std::invalid_argument);
    CHECK_THROWS_AS(
        scenario_from_config(bad([](RunConfig& b) { b.safety = 0.9; })),
        std::invalid_argument);
    CHECK_THROWS_AS(
        scenario_from_config(bad([](RunConfig& b) { b.gravity = -9.81; })),
        std::invalid_argument);
}

TEST_CASE("law_from_config: every law and friction spelling") {
    const BedloadLaw fallback = BedloadLaw::grass(1.0, 3.0);

    RunConfig c;
    CHECK(law_from_config(c, fallback).a_g == 1.0);  // nothing set: fallback

    c.a_g = 0.25;  // tweak the fallback without naming a law
    CHECK(law_from_config(c, fallback).a_g == 0.25);
    c.m_g = 2.0;
    CHECK(law_from_config(c, fallback).m_g == 2.0);

    c = RunConfig{};
    c.law = "grass";
    c.a_g = 0.1;
    const BedloadLaw g = law_from_config(c, fallback);
    CHECK(g.kind == BedloadLaw::Kind::Grass);
    CHECK(g.a_g == 0.1);

    for (const auto& [name, formula] :
         {std::pair<std::string, ShieldsFormula>{"mpm",
                                                 ShieldsFormula::MeyerPeterMuller},
          {"flvb", ShieldsFormula::FernandezLuqueVanBeek},
          {"nielsen", ShieldsFormula::Nielsen},
          {"ribberink", ShieldsFormula::Ribberink},
          {"camenen", ShieldsFormula::CamenenLarson}}) {
        RunConfig s;
        s.law = name;
        const BedloadLaw law = law_from_config(s, fallback);
        CHECK(law.kind == BedloadLaw::Kind::Shields);
        CHECK(law.formula == formula);
        // friction defaults to Manning n = 0.025
        CHECK(law.friction.model == FrictionModel::Manning);
        CHECK(law.friction.coefficient == 0.025);
    }

    RunConfig dw;
    dw.law = "mpm";
    dw.friction = "darcy-weisbach";
    const BedloadLaw law = law_from_config(dw, fallback);
    CHECK(law.friction.model == FrictionModel::DarcyWeisbach);
    CHECK(law.friction.coefficient == 0.03);  // model-matched default

    dw.friction_coef = 0.05;
    CHECK(law_from_config(dw, fallback).friction.coefficient == 0.05);

    RunConfig params;
    params.law = "nielsen";
    params.tau_cr = 0.06;
    params.d_s = 5e-4;
    params.rel_density = 2.1;
    const BedloadLaw n = law_from_config(params, fallback);
    CHECK(n.tau_cr == 0.06);
    CHECK(n.grain_diameter == 5e-4);
    CHECK(n.rel_density == 2.1);

    RunConfig bad;
    bad.law = "einstein";
    CHECK_THROWS_AS(law_from_config(bad, fallback), std::invalid_argument);
    RunConfig badf;
    badf.law = "mpm";
    badf.friction = "chezy";
    CHECK_THROWS_AS(law_from_config(badf, fallback), std::invalid_argument);
}

TEST_CASE("snapshots: 1D round trip and byte stability") {
    Field f(Grid::make_1d(4.0, 8));
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> d(0.1, 3.0);
    for (auto& c : f.cells) {
        c.h = d(rng);
        c.hu = d(rng) - 1.5;
        c.zb = d(rng) * 0.1;
    }

    const std::string text = snapshot_to_string(f, 12.25);
    CHECK(text.substr(0, text.find('\n')) == "x,h,u,zb,eta,time");
    CHECK(text == snapshot_to_string(f, 12.25));  // identical bytes

    const auto path = temp_file("silt_snap_1d.csv");
    write_snapshot(f, 12.25, path.string());
    const Snapshot back = read_snapshot(path.string());
    CHECK(back.time == 12.25);
    CHECK(back.field.grid.nx == 8);
    CHECK(back.field.grid.dx == doctest::Approx(0.5).epsilon(1e-15));
    for (int i = 0; i < 8; ++i) {
        // h and zb are stored directly: 17 significant digits reproduce
        // the doubles exactly.  hu passes through u = hu/h, so allow the
        // one rounding of the divide/multiply round trip.
        CHECK(back.field.at(i).h == f.at(i).h);
        CHECK(back.field.at(i).hu ==
              doctest::Approx(f.at(i).hu).epsilon(1e-15).scale(1.0));
        CHECK(back.field.at(i).zb == f.at(i).zb);
    }
    std::filesystem::remove(path);
}

TEST_CASE("snapshots: 2D round trip") {
    Field f(Grid::make_2d(6.0, 4.0, 6, 4));
    std::mt19937 rng(72);
    std::uniform_real_distribution<double> d(0.1, 2.0);
    for (auto& c : f.cells) {
        c.h = d(rng);
        c.hu = d(rng) - 1.0;
        c.hv = d(rng) - 1.0;
        c.zb = d(rng) * 0.2;
    }

    const std::string text = snapshot_to_string(f, 3.0);
    CHECK(text.substr(0, text.find('\n')) == "x,y,h,u,v,zb,eta,time");

    const auto path = temp_file("silt_snap_2d.csv");
    write_snapshot(f, 3.0, path.string());
    const Snapshot back = read_snapshot(path.string());
    CHECK(back.field.grid.nx == 6);
    CHECK(back.field.grid.ny == 4);
    CHECK(back.field.grid.dy == doctest::Approx(1.0).epsilon(1e-15));
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 6; ++i) {
            CHECK(back.field.at(i, j).h == f.at(i, j).h);
            CHECK(back.field.at(i, j).hu ==
                  doctest::Approx(f.at(i, j).hu).epsilon(1e-15).scale(1.0));
            CHECK(back.field.at(i, j).hv ==
                  doctest::Approx(f.at(i, j).hv).epsilon(1e-15).scale(1.0));
            CHECK(back.field.at(i, j).zb == f.at(i, j).zb);
        }
    std::filesystem::remove(path);
}

TEST_CASE("snapshots: eta column is the free surface") {
    Field f(Grid::make_1d(1.0, 1));
    f.at(0) = {2.0, 1.0, 0.0, 0.5};
    const std::string text = snapshot_to_string(f, 0.0);
    // row: x,h,u,zb,eta,time
    CHECK(text.find("0.5,2,0.5,0.5,2.5,0") != std::string::npos);

    CHECK_THROWS_AS(read_snapshot("/nonexistent/snap.csv"),
                    std::runtime_error);
}

TEST_CASE("speedup report") {
    const std::vector<std::pair<int, double>> timings{{4, 100.0}, {8, 52.0}};
    const std::vector<SpeedupRow> rows = speedup_report(timings, 4);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].workers == 4);
    CHECK(rows[0].speedup == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(rows[0].efficiency == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(rows[1].speedup == doctest::Approx(4.0 * 100.0 / 52.0).epsilon(1e-15));
    CHECK(rows[1].efficiency ==
          doctest::Approx(4.0 * 100.0 / 52.0 / 8.0).epsilon(1e-15));

    // perfect scaling: efficiency exactly 1 at every count
    const std::vector<SpeedupRow> ideal =
        speedup_report({{1, 64.0}, {2, 32.0}, {4, 16.0}}, 1);
    for (const SpeedupRow& r : ideal)
        CHECK(r.efficiency == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(speedup_report(timings, 2), std::invalid_argument);
    CHECK_THROWS_AS(speedup_report({{4, 0.0}, {8, 1.0}}, 4),
                    std::invalid_argument);

    const std::string csv = speedup_to_csv(rows);
    CHECK(csv.substr(0, csv.find('\n')) == "workers,seconds,speedup,efficiency");
    CHECK(csv.find("\n4,") != std::string::npos);
}

TEST_CASE("timing csv") {
    std::vector<WorkerTiming> t(2);
    t[0] = {0, 10, 1.5, 0.25};
    t[1] = {1, 10, 1.4, 0.35};
    const std::string csv = timing_to_csv(t);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "rank,steps,compute_seconds,exchange_seconds");
    CHECK(csv.find("\n0,10,") != std::string::npos);
    CHECK(csv.find("\n1,10,") != std::string::npos);
}

TEST_CASE("crest track") {
    auto field_with_peak = [](int at, double height) {
        Field f(Grid::make_1d(10.0, 10));
        for (int i = 0; i < 10; ++i) f.at(i).zb = 0.1;
        f.at(at).zb = height;
        return f;
    };

    SUBCASE("downstream motion") {
        const CrestTrack t = crest_track({{0.0, field_with_peak(2, 1.0)},
                                          {1.0, field_with_peak(4, 0.9)},
                                          {2.0, field_with_peak(7, 0.8)}});
        REQUIRE(t.x.size() == 3);
        CHECK(t.x[0] == doctest::Approx(2.5).epsilon(1e-15));
        CHECK(t.x[2] == doctest::Approx(7.5).epsilon(1e-15));
        CHECK(t.verdict == CrestMotion::Downstream);
        CHECK(t.time == std::vector<double>{0.0, 1.0, 2.0});
    }

    SUBCASE("upstream motion") {
        const CrestTrack t = crest_track(
            {{0.0, field_with_peak(7, 1.0)}, {1.0, field_with_peak(3, 1.0)}});
        CHECK(t.verdict == CrestMotion::Upstream);
    }

    SUBCASE("stationary bed") {
        const CrestTrack t = crest_track(
            {{0.0, field_with_peak(5, 1.0)}, {1.0, field_with_peak(5, 1.2)}});
        CHECK(t.verdict == CrestMotion::Stationary);
    }

    SUBCASE("mixed motion") {
        const CrestTrack t = crest_track({{0.0, field_with_peak(2, 1.0)},
                                          {1.0, field_with_peak(5, 1.0)},
                                          {2.0, field_with_peak(3, 1.0)}});
        CHECK(t.verdict == CrestMotion::Mixed);
    }

    SUBCASE("tie resolves to the smallest x") {
        Field f(Grid::make_1d(10.0, 10));
        f.at(3).zb = 1.0;
        f.at(6).zb = 1.0;
        const CrestTrack t = crest_track({{0.0, f}});
        CHECK(t.x[0] == doctest::Approx(3.5).epsilon(1e-15));
        CHECK(t.verdict == CrestMotion::Stationary);
    }

    CHECK(to_string(CrestMotion::Downstream) == "downstream");
    CHECK(to_string(CrestMotion::Upstream) == "upstream");
    CHECK(to_string(CrestMotion::Stationary) == "stationary");
    CHECK(to_string(CrestMotion::Mixed) == "mixed");
}

TEST_SUITE_END();
