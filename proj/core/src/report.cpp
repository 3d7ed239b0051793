#include <cstdio>
#include <stdexcept>
#include <string>

#include "silt/io.hpp"

namespace silt {

namespace {

void append_num(std::string& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

std::vector<SpeedupRow> speedup_report(
    const std::vector<std::pair<int, double>>& timings, int ref_workers) {
    double t_ref = -1;
    for (const auto& [w, t] : timings)
        if (w == ref_workers) t_ref = t;
    if (t_ref < 0)
        throw std::invalid_argument("reference worker count " +
                                    std::to_string(ref_workers) +
                                    " has no timing entry");
    std::vector<SpeedupRow> rows;
    rows.reserve(timings.size());
    for (const auto& [w, t] : timings) {
        if (w <= 0 || !(t > 0))
            throw std::invalid_argument("timings must have positive workers "
                                        "and wall time");
        SpeedupRow r;
        r.workers = w;
        r.seconds = t;
        r.speedup = ref_workers * t_ref / t;
        r.efficiency = r.speedup / w;
        rows.push_back(r);
    }
    return rows;
}

std::string speedup_to_csv(const std::vector<SpeedupRow>& rows) {
    std::string out = "workers,seconds,speedup,efficiency\n";
    for (const SpeedupRow& r : rows) {
        out += std::to_string(r.workers);
        out += ',';
        append_num(out, r.seconds);
        out += ',';
        append_num(out, r.speedup);
        out += ',';
        append_num(out, r.efficiency);
        out += '\n';
    }
    return out;
}

std::string timing_to_csv(const std::vector<WorkerTiming>& rows) {
    std::string out = "rank,steps,compute_seconds,exchange_seconds\n";
    for (const WorkerTiming& r : rows) {
        out += std::to_string(r.rank);
        out += ',';
        out += std::to_string(r.steps);
        out += ',';
        append_num(out, r.compute_seconds);
        out += ',';
        append_num(out, r.exchange_seconds);
        out += '\n';
    }
    return out;
}

CrestTrack crest_track(
    const std::vector<std::pair<double, Field>>& snapshots) {
    CrestTrack track;
    for (const auto& [time, field] : snapshots) {
        const Grid& g = field.grid;
        double best_z = field.at(0, 0).zb;
        double best_x = g.x_center(0);
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const double z = field.at(i, j).zb;
                const double x = g.x_center(i);
                if (z > best_z || (z == best_z && x < best_x)) {
                    best_z = z;
                    best_x = x;
                }
            }
        }
        track.time.push_back(time);
        track.x.push_back(best_x);
    }

    bool any_up = false;
    bool any_down = false;
    for (std::size_t k = 1; k < track.x.size(); ++k) {
        if (track.x[k] > track.x[k - 1]) any_down = true;  // downstream = +x
        if (track.x[k] < track.x[k - 1]) any_up = true;
    }
    if (any_up && any_down)
        track.verdict = CrestMotion::Mixed;
    else if (any_down)
        track.verdict = CrestMotion::Downstream;
    else if (any_up)
        track.verdict = CrestMotion::Upstream;
    else
        track.verdict = CrestMotion::Stationary;
    return track;
}

std::string to_string(CrestMotion m) {
    switch (m) {
        case CrestMotion::Downstream: return "downstream";
        case CrestMotion::Upstream: return "upstream";
        case CrestMotion::Stationary: return "stationary";
        case CrestMotion::Mixed: return "mixed";
    }
    return "?";
}

}  // namespace silt
