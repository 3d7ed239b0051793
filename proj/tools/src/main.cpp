#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "silt/io.hpp"
#include "silt/regime.hpp"

namespace fs = std::filesystem;

namespace {

struct Dims {
    int x = 0;
    std::optional<int> y;
};

Dims parse_dims(const std::string& s, const std::string& flag) {
    auto parse_int = [&](const std::string& tok) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || v <= 0)
            throw std::invalid_argument(
                flag + ": expected positive integers like 200 or 200x100, got '" +
                s + "'");
        return v;
    };
    Dims d;
    const std::size_t x = s.find('x');
    if (x == std::string::npos) {
        d.x = parse_int(s);
    } else {
        d.x = parse_int(s.substr(0, x));
        d.y = parse_int(s.substr(x + 1));
    }
    return d;
}

std::string fmt(double v, const char* spec = "%.17g") {
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// Flags shared by every subcommand that needs a transport law.
struct LawFlags {
    std::string law;
    double a_g = 0, m_g = 0, tau_cr = 0, d_s = 0, rel_density = 0;
    std::string friction;
    double friction_coef = 0;

    void add(CLI::App* sub) {
        sub->add_option("--law", law,
                        "transport law: grass|mpm|flvb|nielsen|ribberink|camenen");
        sub->add_option("--ag", a_g, "Grass coefficient A_g");
        sub->add_option("--mg", m_g, "Grass exponent m_g (in [1, 4])");
        sub->add_option("--tau-cr", tau_cr, "critical Shields stress");
        sub->add_option("--ds", d_s, "grain diameter (m)");
        sub->add_option("--rel-density", rel_density,
                        "sediment/water density ratio");
        sub->add_option("--friction", friction,
                        "friction model: manning|darcy-weisbach");
        sub->add_option("--friction-coef", friction_coef,
                        "friction coefficient (Manning n or Darcy f)");
    }

    void fill(const CLI::App* sub, silt::RunConfig& c) const {
        if (sub->count("--law")) c.law = law;
        if (sub->count("--ag")) c.a_g = a_g;
        if (sub->count("--mg")) c.m_g = m_g;
        if (sub->count("--tau-cr")) c.tau_cr = tau_cr;
        if (sub->count("--ds")) c.d_s = d_s;
        if (sub->count("--rel-density")) c.rel_density = rel_density;
        if (sub->count("--friction")) c.friction = friction;
        if (sub->count("--friction-coef")) c.friction_coef = friction_coef;
    }
};

// ---- simulate --------------------------------------------------------------

struct SimulateFlags {
    std::string config_path, scenario, cells, workers, out, corner;
    double t_end = 0, cfl = 0, safety = 0, gravity = 0, snap_every = 0;
    std::vector<double> snap_at;
    long max_steps = 0;
    LawFlags law;
};

int run_simulate(const CLI::App* sub, const SimulateFlags& f) {
    silt::RunConfig cfg;
    if (sub->count("--config")) cfg = silt::parse_config_file(f.config_path);

    silt::RunConfig over;
    if (sub->count("--scenario")) over.scenario = f.scenario;
    if (sub->count("--cells")) {
        const Dims d = parse_dims(f.cells, "--cells");
        over.cells_x = d.x;
        over.cells_y = d.y;
    }
    if (sub->count("--t-end")) over.t_end = f.t_end;
    if (sub->count("--cfl")) over.cfl = f.cfl;
    if (sub->count("--safety")) over.safety = f.safety;
    if (sub->count("--gravity")) over.gravity = f.gravity;
    if (sub->count("--workers")) {
        const Dims d = parse_dims(f.workers, "--workers");
        over.workers_x = d.x;
        over.workers_y = d.y.value_or(1);
    }
    if (sub->count("--out")) over.out_dir = f.out;
    if (sub->count("--snap-every")) over.snap_every = f.snap_every;
    if (sub->count("--snap-at")) over.snap_at = f.snap_at;
    if (sub->count("--max-steps")) over.max_steps = f.max_steps;
    if (sub->count("--corner-exchange")) over.corner_exchange = (f.corner == "on");
    f.law.fill(sub, over);

    cfg = silt::merge_config(cfg, over);
    const silt::Scenario sc = silt::scenario_from_config(cfg);
    const int px = cfg.workers_x.value_or(1);
    const int py = cfg.workers_y.value_or(1);

    silt::RunOptions opt;
    opt.max_steps = cfg.max_steps.value_or(-1);
    opt.exchange_corners = cfg.corner_exchange.value_or(true);

    std::vector<double> snaps = cfg.snap_at;
    if (cfg.snap_every) {
        if (!(*cfg.snap_every > 0))
            throw std::invalid_argument("snap_every must be positive");
        for (long k = 0; k * *cfg.snap_every <= sc.t_end * (1.0 + 1e-12); ++k)
            snaps.push_back(k * *cfg.snap_every);
    }
    std::sort(snaps.begin(), snaps.end());
    snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
    if (!snaps.empty() && !cfg.out_dir)
        throw std::invalid_argument(
            "snapshots requested but no output directory given (--out)");

    fs::path dir;
    if (cfg.out_dir) {
        dir = *cfg.out_dir;
        fs::create_directories(dir);
    }
    int snap_idx = 0;
    opt.snapshot_times = snaps;
    if (!snaps.empty()) {
        opt.on_snapshot = [&](double t, const silt::Field& field) {
            char name[32];
            std::snprintf(name, sizeof name, "snap_%04d.csv", snap_idx++);
            silt::write_snapshot(field, t, (dir / name).string(), sc.phys);
            std::cout << "snapshot t = " << fmt(t, "%g") << " s -> " << name
                      << "\n";
        };
    }

    if (sc.choked_cells > 0)
        std::cout << "note: " << sc.choked_cells
                  << " cells start at critical depth (no steady supercritical "
                     "profile there)\n";

    const silt::RunResult res = silt::run_parallel(sc, px, py, opt);

    if (cfg.out_dir) {
        silt::write_snapshot(res.final_field, res.time,
                             (dir / "final.csv").string(), sc.phys);
        std::ofstream tf(dir / "timing.csv");
        tf << silt::timing_to_csv(res.timing);
        std::ofstream cf(dir / "config.txt");
        cf << silt::emit_config(cfg);
    }

    const silt::CrestTrack track =
        silt::crest_track({{0.0, sc.initial}, {res.time, res.final_field}});

    const silt::Grid& g = sc.grid;
    std::cout << "scenario   " << sc.name << "  (";
    if (g.dim == 1)
        std::cout << g.nx << " cells, dx = " << fmt(g.dx, "%g") << " m";
    else
        std::cout << g.nx << "x" << g.ny << " cells, dx = " << fmt(g.dx, "%g")
                  << " m, dy = " << fmt(g.dy, "%g") << " m";
    std::cout << ")\n";
    std::cout << "law        " << sc.law.describe() << "\n";
    std::cout << "workers    " << px << "x" << py << "\n";
    std::cout << "steps      " << res.steps << "  (t = " << fmt(res.time, "%g")
              << " s)\n";
    std::cout << "wall time  " << fmt(res.wall_seconds, "%.3f") << " s\n";
    std::cout << "crest      x = " << fmt(track.x.front(), "%g") << " m -> "
              << fmt(track.x.back(), "%g") << " m ("
              << silt::to_string(track.verdict) << ")\n";
    if (cfg.out_dir) std::cout << "output     " << dir.string() << "\n";
    return 0;
}

// ---- regime ----------------------------------------------------------------

struct RegimeFlags {
    double h = 0, u = 0, gravity = 0;
    LawFlags law;
};

int run_regime(const CLI::App* sub, const RegimeFlags& f) {
    silt::RunConfig lc;
    f.law.fill(sub, lc);
    const silt::BedloadLaw law = silt::law_from_config(
        lc, silt::BedloadLaw::grass(lc.a_g.value_or(1.0),
                                    lc.m_g.value_or(3.0)));
    silt::Physics phys;
    if (sub->count("--gravity")) phys.gravity = f.gravity;

    const silt::RegimeReport rep = silt::analyze_regime(f.h, f.u, law, phys);

    std::cout << "law        " << law.describe() << "\n";
    std::cout << "state      h = " << fmt(f.h, "%g") << " m, u = "
              << fmt(f.u, "%g") << " m/s\n";
    std::cout << "froude     " << fmt(rep.froude, "%.6g") << "\n";
    std::cout << "alpha      " << fmt(rep.derivs.alpha, "%.10g") << "\n";
    std::cout << "beta       " << fmt(rep.derivs.beta, "%.10g") << "\n";
    std::cout << "dqs_du     " << fmt(rep.derivs.dqs_du, "%.10g") << "\n";
    if (rep.cubic.real) {
        std::cout << "roots      " << fmt(rep.cubic.roots[0], "%.10g") << "  "
                  << fmt(rep.cubic.roots[1], "%.10g") << "  "
                  << fmt(rep.cubic.roots[2], "%.10g") << "\n";
        std::cout << "pattern    " << rep.sign_pattern << "\n";
        std::cout << "sediment   " << fmt(rep.sediment_root, "%.10g")
                  << " m/s\n";
    } else {
        std::cout << "roots      " << fmt(rep.cubic.roots[0], "%.10g")
                  << "  and  " << fmt(rep.cubic.roots[1], "%.10g") << " +/- "
                  << fmt(std::abs(rep.cubic.roots[2]), "%.10g") << "i\n";
    }
    std::cout << "regime     " << silt::to_string(rep.regime) << "\n";
    if (rep.transcritical)
        std::cout << "note       near-critical flow (|Fr - 1| <= 0.05): "
                     "classification is unreliable here\n";
    return 0;
}

// ---- bench-speedup ---------------------------------------------------------

struct BenchFlags {
    std::string scenario = "bump2d";
    std::string cells = "400x400";
    std::string layouts = "1x1,2x1,2x2,4x2";
    double t_end = 50.0, cfl = 0;
    long max_steps = 0;
    int runs = 1, ref = 0;
    std::string out;
};

int run_bench(const CLI::App* sub, const BenchFlags& f) {
    std::vector<std::pair<int, int>> layouts;
    std::size_t pos = 0;
    while (pos <= f.layouts.size()) {
        std::size_t comma = f.layouts.find(',', pos);
        if (comma == std::string::npos) comma = f.layouts.size();
        const Dims d = parse_dims(f.layouts.substr(pos, comma - pos), "--layouts");
        layouts.emplace_back(d.x, d.y.value_or(1));
        pos = comma + 1;
        if (comma == f.layouts.size()) break;
    }
    if (layouts.empty()) throw std::invalid_argument("--layouts: empty list");

    silt::RunConfig cfg;
    cfg.scenario = f.scenario;
    const Dims cd = parse_dims(f.cells, "--cells");
    cfg.cells_x = cd.x;
    cfg.cells_y = cd.y;
    cfg.t_end = f.t_end;
    if (sub->count("--cfl")) cfg.cfl = f.cfl;

    std::cout << "host reports " << std::thread::hardware_concurrency()
              << " hardware threads\n";

    std::vector<std::pair<int, double>> timings;
    for (const auto& [px, py] : layouts) {
        const silt::Scenario sc = silt::scenario_from_config(cfg);
        silt::RunOptions opt;
        if (sub->count("--max-steps")) opt.max_steps = f.max_steps;
        double best = 0;
        for (int r = 0; r < std::max(1, f.runs); ++r) {
            const silt::RunResult res = silt::run_parallel(sc, px, py, opt);
            if (r == 0 || res.wall_seconds < best) best = res.wall_seconds;
        }
        timings.emplace_back(px * py, best);
        std::cout << "layout " << px << "x" << py << ": "
                  << fmt(best, "%.3f") << " s\n";
    }

    const int ref = (f.ref > 0) ? f.ref : timings.front().first;
    const std::vector<silt::SpeedupRow> rows = silt::speedup_report(timings, ref);

    std::printf("\n%-9s %-11s %-9s %s\n", "workers", "seconds", "speedup",
                "efficiency");
    for (const silt::SpeedupRow& r : rows)
        std::printf("%-9d %-11.3f %-9.3f %.3f\n", r.workers, r.seconds,
                    r.speedup, r.efficiency);

    if (!f.out.empty()) {
        std::ofstream os(f.out);
        if (!os)
            throw std::runtime_error("cannot open '" + f.out + "' for writing");
        os << silt::speedup_to_csv(rows);
        std::cout << "\nwrote " << f.out << "\n";
    }
    return 0;
}

// ---- flux-table ------------------------------------------------------------

struct FluxTableFlags {
    double tau_cr = 0.047;
    std::vector<double> taus;
    double tau_max = 0.5;
    int points = 101;
    std::string out;
};

int run_flux_table(const CLI::App* sub, const FluxTableFlags& f) {
    std::vector<double> taus = f.taus;
    if (taus.empty()) {
        if (f.points < 2 || !(f.tau_max > 0))
            throw std::invalid_argument(
                "--points must be >= 2 and --tau-max positive");
        for (int k = 0; k < f.points; ++k)
            taus.push_back(f.tau_max * k / (f.points - 1));
    }

    std::string out = "tau,mpm,flvb,nielsen,ribberink,camenen\n";
    using silt::ShieldsFormula;
    constexpr ShieldsFormula formulas[] = {
        ShieldsFormula::MeyerPeterMuller,
        ShieldsFormula::FernandezLuqueVanBeek,
        ShieldsFormula::Nielsen,
        ShieldsFormula::Ribberink,
        ShieldsFormula::CamenenLarson,
    };
    for (double tau : taus) {
        out += fmt(tau);
        for (ShieldsFormula fo : formulas) {
            out += ',';
            out += fmt(silt::shields_flux(fo, tau, f.tau_cr));
        }
        out += '\n';
    }
    (void)sub;
    if (!f.out.empty()) {
        std::ofstream os(f.out);
        if (!os)
            throw std::runtime_error("cannot open '" + f.out + "' for writing");
        os << out;
        std::cout << "wrote " << f.out << "\n";
    } else {
        std::cout << out;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "silt: finite-volume shallow-water flow coupled to bedload transport"};
    app.require_subcommand(1);

    SimulateFlags sf;
    CLI::App* sim = app.add_subcommand(
        "simulate", "run a scenario and write CSV snapshots");
    sim->add_option("--config", sf.config_path, "key = value configuration file")
        ->check(CLI::ExistingFile);
    sim->add_option("--scenario", sf.scenario,
                    "scenario name: dune1d|antidune1d|bump2d");
    sim->add_option("--cells", sf.cells, "cell counts, J or JxK");
    sim->add_option("--t-end", sf.t_end, "simulated end time (s)");
    sim->add_option("--cfl", sf.cfl, "CFL number in (0, 1]");
    sim->add_option("--safety", sf.safety, "celerity safety factor (>= 1)");
    sim->add_option("--gravity", sf.gravity, "gravity (m/s^2)");
    sim->add_option("--workers", sf.workers, "worker layout, PX or PXxPY");
    sim->add_option("--out", sf.out, "output directory");
    sim->add_option("--snap-every", sf.snap_every, "snapshot interval (s)");
    sim->add_option("--snap-at", sf.snap_at, "snapshot times t1,t2,... (s)")
        ->delimiter(',');
    sim->add_option("--max-steps", sf.max_steps, "stop after this many steps");
    sim->add_option("--corner-exchange", sf.corner,
                    "exchange corner halo cells (on|off)")
        ->check(CLI::IsMember({"on", "off"}));
    sf.law.add(sim);

    RegimeFlags rf;
    CLI::App* reg = app.add_subcommand(
        "regime", "classify a flow state (dune / antidune / ...)");
    reg->add_option("depth", rf.h, "water depth (m)")->required();
    reg->add_option("velocity", rf.u, "velocity (m/s)")->required();
    reg->add_option("--gravity", rf.gravity, "gravity (m/s^2)");
    rf.law.add(reg);

    BenchFlags bf;
    CLI::App* ben = app.add_subcommand(
        "bench-speedup", "time a scenario across worker layouts");
    ben->add_option("--scenario", bf.scenario, "scenario name");
    ben->add_option("--cells", bf.cells, "cell counts, J or JxK");
    ben->add_option("--t-end", bf.t_end, "simulated end time (s)");
    ben->add_option("--cfl", bf.cfl, "CFL number in (0, 1]");
    ben->add_option("--max-steps", bf.max_steps, "cap the number of steps");
    ben->add_option("--layouts", bf.layouts, "comma list of PXxPY layouts");
    ben->add_option("--runs", bf.runs, "repetitions per layout (min is kept)");
    ben->add_option("--ref", bf.ref, "reference worker count for speedup");
    ben->add_option("--out", bf.out, "write the report as CSV here");

    FluxTableFlags ff;
    CLI::App* flx = app.add_subcommand(
        "flux-table",
        "tabulate dimensionless transport rate vs Shields stress for all "
        "threshold laws");
    flx->add_option("--tau-cr", ff.tau_cr, "critical Shields stress");
    flx->add_option("--tau", ff.taus, "explicit stress values t1,t2,...")
        ->delimiter(',');
    flx->add_option("--tau-max", ff.tau_max, "range end for the sampled table");
    flx->add_option("--points", ff.points, "number of samples in [0, tau-max]");
    flx->add_option("--out", ff.out, "write CSV here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return run_simulate(sim, sf);
        if (reg->parsed()) return run_regime(reg, rf);
        if (ben->parsed()) return run_bench(ben, bf);
        if (flx->parsed()) return run_flux_table(flx, ff);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
