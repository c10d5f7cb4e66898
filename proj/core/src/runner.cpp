#include "evsim/runner.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <stdexcept>

#include "evsim/report.hpp"

namespace evsim {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Welfare must be identical whether payments are counted on both sides of the
// ledger or cancelled algebraically; a mismatch means an accounting bug.
void check_welfare_identity(const RunSummary& s) {
    if (std::abs(s.social_welfare_usd - s.social_welfare_payment_free_usd) > 1e-6) {
        throw std::logic_error("welfare accounting mismatch: " + fmt(s.social_welfare_usd) +
                               " vs " + fmt(s.social_welfare_payment_free_usd));
    }
}

}  // namespace

ReplicationSet run_replications(const ScenarioConfig& cfg) {
    validate(cfg);
    ReplicationSet out;
    out.runs.resize(static_cast<std::size_t>(cfg.replications));

    if (cfg.replications == 1) {
        out.runs[0] = run_simulation(cfg, 0);
    } else {
        std::vector<std::future<RunResult>> futures;
        futures.reserve(out.runs.size());
        for (int r = 0; r < cfg.replications; ++r) {
            futures.push_back(std::async(std::launch::async, [&cfg, r] {
                return run_simulation(cfg, static_cast<std::uint32_t>(r));
            }));
        }
        for (std::size_t r = 0; r < futures.size(); ++r) out.runs[r] = futures[r].get();
    }

    out.summaries.reserve(out.runs.size());
    for (const RunResult& run : out.runs) {
        out.summaries.push_back(summarize(run, cfg));
        check_welfare_identity(out.summaries.back());
    }
    return out;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, std::span<const double> multipliers) {
    validate(cfg);
    std::vector<SweepRow> rows;
    rows.reserve(multipliers.size());

    for (const double mult : multipliers) {
        if (!(mult >= 0.0)) throw std::invalid_argument("sweep: multipliers must be >= 0");
        ScenarioConfig point = cfg;
        point.demand.penetration_multiplier *= mult;

        const ReplicationSet adjusted = run_replications(point);
        const ReplicationSet* baseline = &adjusted;
        ReplicationSet baseline_storage;
        if (cfg.pricing.kind != PriceScheme::None) {
            ScenarioConfig none = point;
            none.pricing.kind = PriceScheme::None;
            baseline_storage = run_replications(none);
            baseline = &baseline_storage;
        }

        SweepRow row;
        row.multiplier = mult;
        const double n = static_cast<double>(adjusted.summaries.size());
        for (std::size_t r = 0; r < adjusted.summaries.size(); ++r) {
            const RunSummary& s = adjusted.summaries[r];
            const RunSummary& b = baseline->summaries[r];
            if (s.total_requests != b.total_requests) {
                throw std::logic_error("sweep: baseline demand diverged from adjusted demand");
            }
            row.demand_supply_ratio += s.demand_supply_ratio / n;
            row.total_requests += static_cast<double>(s.total_requests) / n;
            row.served += static_cast<double>(s.served) / n;
            row.lost += static_cast<double>(s.lost) / n;
            row.lost_pct += s.lost_pct / n;
            row.avg_wait_min += s.avg_wait_min / n;
            row.peak_avg_queue += s.peak_avg_queue / n;
            row.lost_pct_baseline += b.lost_pct / n;
            row.relative_lost_pct += relative_lost_pct(s.lost, b.lost, s.total_requests) / n;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
    std::string out =
        "multiplier,demand_supply_ratio,total_requests,served,lost,lost_pct,avg_wait_min,"
        "peak_avg_queue,lost_pct_baseline,relative_lost_pct\n";
    for (const SweepRow& r : rows) {
        out += fmt(r.multiplier);
        out += ',' + fmt(r.demand_supply_ratio);
        out += ',' + fmt(r.total_requests);
        out += ',' + fmt(r.served);
        out += ',' + fmt(r.lost);
        out += ',' + fmt(r.lost_pct);
        out += ',' + fmt(r.avg_wait_min);
        out += ',' + fmt(r.peak_avg_queue);
        out += ',' + fmt(r.lost_pct_baseline);
        out += ',' + fmt(r.relative_lost_pct);
        out += '\n';
    }
    return out;
}

int cmd_run(const ScenarioConfig& cfg, std::ostream& log) {
    const ReplicationSet set = run_replications(cfg);

    const std::string dir = cfg.output_dir;
    write_text_file(dir + "/summary.json", summary_json_text(set.summaries, cfg));
    // CSVs describe a single replication; with several, the first one.
    write_text_file(dir + "/customers.csv", customers_csv(set.runs.front(), cfg));
    write_text_file(dir + "/stations.csv", stations_csv(set.runs.front()));
    write_text_file(dir + "/arrival_rates.csv", arrival_rates_csv(set.runs.front()));

    for (std::size_t r = 0; r < set.summaries.size(); ++r) {
        const RunSummary& s = set.summaries[r];
        log << "replication " << r << ": requests=" << s.total_requests
            << " served=" << s.served << " lost=" << s.lost << " (" << fmt(s.lost_pct)
            << "%) avg_wait=" << fmt(s.avg_wait_min) << " min"
            << " welfare=$" << fmt(s.social_welfare_usd) << "\n";
    }
    log << "wrote " << dir << "/summary.json, customers.csv, stations.csv, arrival_rates.csv\n";
    return 0;
}

int cmd_sweep(const ScenarioConfig& cfg, std::span<const double> multipliers, std::ostream& log) {
    if (multipliers.empty()) throw std::invalid_argument("sweep: need at least one multiplier");
    const std::vector<SweepRow> rows = run_sweep(cfg, multipliers);
    const std::string csv = sweep_csv(rows);
    write_text_file(cfg.output_dir + "/sweep.csv", csv);
    log << csv;
    log << "wrote " << cfg.output_dir << "/sweep.csv\n";
    return 0;
}

int cmd_validate(const MmcParams& params, long n_arrivals, std::uint64_t seed, std::ostream& log) {
    const MmcMetrics analytic = mmc_metrics(params);
    const MmcSimResult sim = simulate_mmc(params, n_arrivals, seed);

    const auto row = [&log](const char* name, double simulated, double expected) {
        const double rel = expected != 0.0 ? std::abs(simulated - expected) / expected : 0.0;
        log << name << ": simulated=" << fmt(simulated) << " analytic=" << fmt(expected)
            << " rel_err=" << fmt(rel) << "\n";
    };
    log << "M/M/" << params.servers << " lambda=" << fmt(params.lambda)
        << " mu=" << fmt(params.mu) << " arrivals=" << n_arrivals << "\n";
    row("Lq", sim.lq, analytic.lq);
    row("Wq_min", sim.wq_min, analytic.wq_min);
    row("P_wait", sim.p_wait, analytic.p_wait);
    return 0;
}

}  // namespace evsim
