#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "silt/parallel.hpp"
#include "silt/scenarios.hpp"

namespace silt {

// Run configuration as read from a key = value file and/or CLI flags.
// Unset optionals fall back to the scenario's own defaults, so emit/parse
// round-trips exactly which keys were given.
struct RunConfig {
    std::optional<std::string> scenario;  // required to materialize a run
    std::optional<int> cells_x;
    std::optional<int> cells_y;
    std::optional<double> t_end;
    std::optional<double> cfl;
    std::optional<double> safety;
    std::optional<double> gravity;
    std::optional<int> workers_x;
    std::optional<int> workers_y;
    std::optional<std::string> law;  // grass|mpm|flvb|nielsen|ribberink|camenen
    std::optional<double> a_g;
    std::optional<double> m_g;
    std::optional<double> tau_cr;
    std::optional<double> d_s;
    std::optional<double> rel_density;
    std::optional<std::string> friction;  // manning|darcy-weisbach
    std::optional<double> friction_coef;
    std::optional<std::string> out_dir;
    std::optional<double> snap_every;
    std::vector<double> snap_at;
    std::optional<long> max_steps;
    std::optional<bool> corner_exchange;
    std::optional<unsigned long> seed;  // consumed by test utilities only

    bool operator==(const RunConfig&) const = default;
};

// Parse `key = value` lines ('#' comments, blank lines ignored).  Unknown
// keys and malformed values raise std::invalid_argument naming the line.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Canonical text form containing exactly the keys that are set;
// parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& c);

// Fields of `over` that are set win over `base` (CLI-over-file layering).
RunConfig merge_config(RunConfig base, const RunConfig& over);

// Materialize the configured scenario: build by name, then apply law,
// gravity, time and CFL overrides.  Gravity is applied before initial data
// so head-balance initialisation sees the configured value.
Scenario scenario_from_config(const RunConfig& c);

// Resolved bedload law for a config (also used by the flux-table tool).
BedloadLaw law_from_config(const RunConfig& c, const BedloadLaw& fallback);

// --- snapshots ------------------------------------------------------------

// CSV snapshot: header `x,h,u,zb,eta,time` (1D) or `x,y,h,u,v,zb,eta,time`
// (2D), one row per cell in row-major order, 17 significant digits.  The
// same field always serializes to identical bytes.
void write_snapshot(const Field& f, double time, const std::string& path,
                    const Physics& phys = {});
std::string snapshot_to_string(const Field& f, double time,
                               const Physics& phys = {});

struct Snapshot {
    double time = 0;
    Field field;
};
Snapshot read_snapshot(const std::string& path);

// --- reports ---------------------------------------------------------------

struct SpeedupRow {
    int workers = 0;
    double seconds = 0;
    double speedup = 0;     // ref_workers * T_ref / T_p
    double efficiency = 0;  // speedup / workers
};

// `timings`: (worker count, wall seconds) pairs; `ref_workers` picks the
// baseline row (it must be present).
std::vector<SpeedupRow> speedup_report(
    const std::vector<std::pair<int, double>>& timings, int ref_workers);
std::string speedup_to_csv(const std::vector<SpeedupRow>& rows);

std::string timing_to_csv(const std::vector<WorkerTiming>& rows);

// Crest position per snapshot: x of the highest bed cell (ties resolved to
// the smallest x), plus a monotonicity verdict over the sequence.
enum class CrestMotion { Downstream, Upstream, Stationary, Mixed };

struct CrestTrack {
    std::vector<double> time;
    std::vector<double> x;
    CrestMotion verdict = CrestMotion::Stationary;
};
CrestTrack crest_track(const std::vector<std::pair<double, Field>>& snapshots);

std::string to_string(CrestMotion m);

}  // namespace silt
