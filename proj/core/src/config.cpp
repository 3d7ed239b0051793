#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "silt/io.hpp"

namespace silt {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void bad_line(int line, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        bad_line(line, "expected a number, got '" + v + "'");
    }
}

long parse_long(const std::string& v, int line) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        bad_line(line, "expected an integer, got '" + v + "'");
    }
}

// "J" or "JxK"
std::pair<int, std::optional<int>> parse_dims(const std::string& v, int line) {
    const std::size_t x = v.find('x');
    if (x == std::string::npos) return {static_cast<int>(parse_long(v, line)), {}};
    return {static_cast<int>(parse_long(v.substr(0, x), line)),
            static_cast<int>(parse_long(v.substr(x + 1), line))};
}

bool parse_flag(const std::string& v, int line) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    bad_line(line, "expected on/off, got '" + v + "'");
}

std::vector<double> parse_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(item, line));
    }
    return out;
}

std::string format_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        raw = trim(raw);
        if (raw.empty()) continue;

        const std::size_t eq = raw.find('=');
        if (eq == std::string::npos) bad_line(line, "expected key = value");
        const std::string key = trim(raw.substr(0, eq));
        const std::string val = trim(raw.substr(eq + 1));
        if (key.empty()) bad_line(line, "missing key");
        if (val.empty()) bad_line(line, "missing value for '" + key + "'");

        if (key == "scenario") {
            c.scenario = val;
        } else if (key == "cells") {
            auto [x, y] = parse_dims(val, line);
            c.cells_x = x;
            c.cells_y = y;
        } else if (key == "t_end") {
            c.t_end = parse_double(val, line);
        } else if (key == "cfl") {
            c.cfl = parse_double(val, line);
        } else if (key == "safety") {
            c.safety = parse_double(val, line);
        } else if (key == "gravity") {
            c.gravity = parse_double(val, line);
        } else if (key == "workers") {
            auto [x, y] = parse_dims(val, line);
            c.workers_x = x;
            c.workers_y = y.value_or(1);
        } else if (key == "law") {
            c.law = val;
        } else if (key == "a_g") {
            c.a_g = parse_double(val, line);
        } else if (key == "m_g") {
            c.m_g = parse_double(val, line);
        } else if (key == "tau_cr") {
            c.tau_cr = parse_double(val, line);
        } else if (key == "d_s") {
            c.d_s = parse_double(val, line);
        } else if (key == "rel_density") {
            c.rel_density = parse_double(val, line);
        } else if (key == "friction") {
            c.friction = val;
        } else if (key == "friction_coef") {
            c.friction_coef = parse_double(val, line);
        } else if (key == "out_dir") {
            c.out_dir = val;
        } else if (key == "snap_every") {
            c.snap_every = parse_double(val, line);
        } else if (key == "snap_at") {
            c.snap_at = parse_list(val, line);
        } else if (key == "max_steps") {
            c.max_steps = parse_long(val, line);
        } else if (key == "corner_exchange") {
            c.corner_exchange = parse_flag(val, line);
        } else if (key == "seed") {
            const long s = parse_long(val, line);
            if (s < 0) bad_line(line, "seed must be non-negative");
            c.seed = static_cast<unsigned long>(s);
        } else {
            bad_line(line, "unknown key '" + key + "'");
        }
    }
    return c;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const RunConfig& c) {
    std::ostringstream os;
    if (c.scenario) os << "scenario = " << *c.scenario << "\n";
    if (c.cells_x) {
        os << "cells = " << *c.cells_x;
        if (c.cells_y) os << "x" << *c.cells_y;
        os << "\n";
    }
    if (c.t_end) os << "t_end = " << format_num(*c.t_end) << "\n";
    if (c.cfl) os << "cfl = " << format_num(*c.cfl) << "\n";
    if (c.safety) os << "safety = " << format_num(*c.safety) << "\n";
    if (c.gravity) os << "gravity = " << format_num(*c.gravity) << "\n";
    if (c.workers_x) os << "workers = " << *c.workers_x << "x" << c.workers_y.value_or(1) << "\n";
    if (c.law) os << "law = " << *c.law << "\n";
    if (c.a_g) os << "a_g = " << format_num(*c.a_g) << "\n";
    if (c.m_g) os << "m_g = " << format_num(*c.m_g) << "\n";
    if (c.tau_cr) os << "tau_cr = " << format_num(*c.tau_cr) << "\n";
    if (c.d_s) os << "d_s = " << format_num(*c.d_s) << "\n";
    if (c.rel_density) os << "rel_density = " << format_num(*c.rel_density) << "\n";
    if (c.friction) os << "friction = " << *c.friction << "\n";
    if (c.friction_coef) os << "friction_coef = " << format_num(*c.friction_coef) << "\n";
    if (c.out_dir) os << "out_dir = " << *c.out_dir << "\n";
    if (c.snap_every) os << "snap_every = " << format_num(*c.snap_every) << "\n";
    if (!c.snap_at.empty()) {
        os << "snap_at = ";
        for (std::size_t i = 0; i < c.snap_at.size(); ++i)
            os << (i ? "," : "") << format_num(c.snap_at[i]);
        os << "\n";
    }
    if (c.max_steps) os << "max_steps = " << *c.max_steps << "\n";
    if (c.corner_exchange)
        os << "corner_exchange = " << (*c.corner_exchange ? "on" : "off") << "\n";
    if (c.seed) os << "seed = " << *c.seed << "\n";
    return os.str();
}

RunConfig merge_config(RunConfig base, const RunConfig& over) {
    auto pick = [](auto& dst, const auto& src) {
        if (src) dst = src;
    };
    pick(base.scenario, over.scenario);
    pick(base.cells_x, over.cells_x);
    pick(base.cells_y, over.cells_y);
    pick(base.t_end, over.t_end);
    pick(base.cfl, over.cfl);
    pick(base.safety, over.safety);
    pick(base.gravity, over.gravity);
    pick(base.workers_x, over.workers_x);
    pick(base.workers_y, over.workers_y);
    pick(base.law, over.law);
    pick(base.a_g, over.a_g);
    pick(base.m_g, over.m_g);
    pick(base.tau_cr, over.tau_cr);
    pick(base.d_s, over.d_s);
    pick(base.rel_density, over.rel_density);
    pick(base.friction, over.friction);
    pick(base.friction_coef, over.friction_coef);
    pick(base.out_dir, over.out_dir);
    pick(base.snap_every, over.snap_every);
    if (!over.snap_at.empty()) base.snap_at = over.snap_at;
    pick(base.max_steps, over.max_steps);
    pick(base.corner_exchange, over.corner_exchange);
    pick(base.seed, over.seed);
    return base;
}

BedloadLaw law_from_config(const RunConfig& c, const BedloadLaw& fallback) {
    FrictionLaw fric;
    fric.model = FrictionModel::Manning;
    fric.coefficient = 0.025;
    if (c.friction) {
        if (*c.friction == "manning")
            fric.model = FrictionModel::Manning;
        else if (*c.friction == "darcy-weisbach")
            fric.model = FrictionModel::DarcyWeisbach;
        else
            throw std::invalid_argument("unknown friction model '" + *c.friction +
                                        "' (expected manning or darcy-weisbach)");
        if (!c.friction_coef)
            fric.coefficient = (fric.model == FrictionModel::Manning) ? 0.025 : 0.03;
    }
    if (c.friction_coef) fric.coefficient = *c.friction_coef;

    auto shields = [&](ShieldsFormula f) {
        return BedloadLaw::shields(f, fric, c.tau_cr.value_or(0.047),
                                   c.d_s.value_or(1e-3), c.rel_density.value_or(2.65));
    };

    if (!c.law) {
        // No law chosen: keep the scenario's, allowing Grass parameter tweaks.
        BedloadLaw law = fallback;
        if (law.kind == BedloadLaw::Kind::Grass) {
            if (c.a_g) law = BedloadLaw::grass(*c.a_g, c.m_g.value_or(law.m_g));
            else if (c.m_g) law = BedloadLaw::grass(law.a_g, *c.m_g);
        }
        return law;
    }
    const std::string& name = *c.law;
    if (name == "grass")
        return BedloadLaw::grass(c.a_g.value_or(fallback.kind == BedloadLaw::Kind::Grass
                                                    ? fallback.a_g
                                                    : 1.0),
                                 c.m_g.value_or(3.0));
    if (name == "mpm") return shields(ShieldsFormula::MeyerPeterMuller);
    if (name == "flvb") return shields(ShieldsFormula::FernandezLuqueVanBeek);
    if (name == "nielsen") return shields(ShieldsFormula::Nielsen);
    if (name == "ribberink") return shields(ShieldsFormula::Ribberink);
    if (name == "camenen") return shields(ShieldsFormula::CamenenLarson);
    throw std::invalid_argument(
        "unknown law '" + name +
        "' (expected grass, mpm, flvb, nielsen, ribberink or camenen)");
}

Scenario scenario_from_config(const RunConfig& c) {
    Physics phys;
    if (c.gravity) {
        if (!(*c.gravity > 0))
            throw std::invalid_argument("gravity must be positive");
        phys.gravity = *c.gravity;
    }
    if (!c.scenario)
        throw std::invalid_argument(
            "no scenario selected (set 'scenario = ...' or pass --scenario)");
    Scenario sc = build_scenario(*c.scenario, c.cells_x.value_or(0),
                                 c.cells_y.value_or(0), phys);
    sc.law = law_from_config(c, sc.law);
    if (c.t_end) {
        if (!(*c.t_end >= 0)) throw std::invalid_argument("t_end must be >= 0");
        sc.t_end = *c.t_end;
    }
    if (c.cfl) {
        if (!(*c.cfl > 0 && *c.cfl <= 1))
            throw std::invalid_argument("cfl must lie in (0, 1]");
        sc.cfl = *c.cfl;
    }
    if (c.safety) {
        if (!(*c.safety >= 1))
            throw std::invalid_argument("safety must be >= 1");
        sc.safety = *c.safety;
    }
    return sc;
}

}  // namespace silt
