#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "evsim/engine.hpp"
#include "evsim/metrics.hpp"
#include "evsim/mmc.hpp"
#include "evsim/scenario.hpp"

namespace evsim {

struct ReplicationSet {
    std::vector<RunResult> runs;
    std::vector<RunSummary> summaries;
};

// All configured replications, executed concurrently with isolated state and
// merged in replication order.
ReplicationSet run_replications(const ScenarioConfig& cfg);

struct SweepRow {
    double multiplier = 0.0;
    double demand_supply_ratio = 0.0;  // replication mean
    double total_requests = 0.0;
    double served = 0.0;
    double lost = 0.0;
    double lost_pct = 0.0;
    double avg_wait_min = 0.0;
    double peak_avg_queue = 0.0;
    double lost_pct_baseline = 0.0;   // no-adjustment scheme on the same demand
    double relative_lost_pct = 0.0;   // paired percentage-point change
};

// One row per demand multiplier. When the configured scheme adjusts prices, a
// no-adjustment baseline runs on the identical demand stream for comparison.
std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, std::span<const double> multipliers);

std::string sweep_csv(std::span<const SweepRow> rows);

// Command-level entry points shared by the CLI and the test suite. Artifacts
// land in `cfg.output_dir`; progress goes to `log`.
int cmd_run(const ScenarioConfig& cfg, std::ostream& log);
int cmd_sweep(const ScenarioConfig& cfg, std::span<const double> multipliers, std::ostream& log);
int cmd_validate(const MmcParams& params, long n_arrivals, std::uint64_t seed, std::ostream& log);

}  // namespace evsim
