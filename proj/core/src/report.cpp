#include "evsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace evsim {

namespace {

using nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

ordered_json bucket_json(const LostBucket& b) {
    return {{"customers", b.customers}, {"lost", b.lost}, {"lost_pct", b.lost_pct}};
}

ordered_json summary_json(const RunSummary& s) {
    ordered_json j;
    j["total_requests"] = s.total_requests;
    j["served"] = s.served;
    j["lost"] = s.lost;
    j["lost_pct"] = s.lost_pct;
    j["lost_by_reason"] = {{"empty_choice_set", s.lost_empty_choice_set},
                           {"balked_at_spawn", s.lost_balked_spawn},
                           {"balked_at_arrival", s.lost_balked_arrival}};
    j["lost_by_choice_set_size"] = {{"1", bucket_json(s.by_choice_size_1)},
                                    {"2", bucket_json(s.by_choice_size_2)},
                                    {"3+", bucket_json(s.by_choice_size_3plus)}};
    j["avg_wait_min"] = s.avg_wait_min;
    j["avg_total_time_min"] = s.avg_total_time_min;
    j["avg_detour_mi"] = s.avg_detour_mi;
    j["total_revenue_usd"] = s.total_revenue_usd;
    j["disutility_served_avg_usd"] = s.disutility_served_avg_usd;
    j["disutility_all_avg_usd"] = s.disutility_all_avg_usd;
    j["monetized_total_disutility_usd"] = s.monetized_total_disutility_usd;
    j["social_welfare_usd"] = s.social_welfare_usd;
    j["social_welfare_payment_free_usd"] = s.social_welfare_payment_free_usd;
    j["demand_supply_ratio"] = s.demand_supply_ratio;
    j["mean_service_estimate_min"] = s.mean_service_estimate_min;
    j["peak_avg_queue"] = s.peak_avg_queue;
    return j;
}

// Element-wise mean/sd across replication summaries, walking the JSON tree so
// the aggregate mirrors the per-replication layout.
void aggregate(const std::vector<ordered_json>& reps, ordered_json& mean, ordered_json& sd) {
    const ordered_json& first = reps.front();
    for (const auto& item : first.items()) {
        if (item.value().is_object()) {
            std::vector<ordered_json> sub;
            sub.reserve(reps.size());
            for (const ordered_json& r : reps) sub.push_back(r.at(item.key()));
            ordered_json m, d;
            aggregate(sub, m, d);
            mean[item.key()] = std::move(m);
            sd[item.key()] = std::move(d);
            continue;
        }
        double sum = 0.0;
        for (const ordered_json& r : reps) sum += r.at(item.key()).get<double>();
        const double n = static_cast<double>(reps.size());
        const double mu = sum / n;
        double var = 0.0;
        for (const ordered_json& r : reps) {
            const double dv = r.at(item.key()).get<double>() - mu;
            var += dv * dv;
        }
        mean[item.key()] = mu;
        sd[item.key()] = reps.size() > 1 ? std::sqrt(var / (n - 1.0)) : 0.0;
    }
}

}  // namespace

std::string customers_csv(const RunResult& result, const ScenarioConfig& cfg) {
    std::string out =
        "id,spawn_time,origin_x,origin_y,dest_x,dest_y,choice_set_size,status,lost_reason,"
        "station_id,wait_min,total_min,detour_mi,payment_usd,monetized_utility_usd\n";
    for (const CustomerOutcome& o : result.outcomes) {
        const bool served = o.status == OutcomeStatus::Served;
        out += std::to_string(o.id);
        out += ',' + fmt(o.spawn_min);
        out += ',' + fmt(o.origin.x) + ',' + fmt(o.origin.y);
        out += ',' + fmt(o.dest.x) + ',' + fmt(o.dest.y);
        out += ',' + std::to_string(o.choice_set_size_at_spawn);
        out += ',';
        out += to_string(o.status);
        out += ',';
        out += to_string(o.lost_reason);
        out += ',';
        if (served) out += cfg.stations[static_cast<std::size_t>(o.station)].id;
        out += ',' + fmt(o.wait_min);
        out += ',' + fmt(served ? o.wait_min + o.service_min : 0.0);
        out += ',' + fmt(o.detour_mi);
        out += ',' + fmt(o.payment_usd);
        out += ',' +
               fmt(monetized_utility_usd(o, cfg.choice, cfg.metrics.lost_value_rounded));
        out += '\n';
    }
    return out;
}

std::string stations_csv(const RunResult& result) {
    std::string out = "station_id,minute,queue_len,price_usd_per_hr,cum_arrivals\n";
    for (const StationSeries& s : result.series) {
        for (const MinuteSample& m : s.samples) {
            out += s.station_id;
            out += ',' + std::to_string(m.minute);
            out += ',' + std::to_string(m.queue_len);
            out += ',' + fmt(m.price);
            out += ',' + std::to_string(m.cum_arrivals);
            out += '\n';
        }
    }
    return out;
}

std::string arrival_rates_csv(const RunResult& result) {
    std::string out = "station_id,bin_start_min,arrivals\n";
    for (const StationSeries& s : result.series) {
        for (std::size_t b = 0; b < s.arrivals_per_bin.size(); ++b) {
            out += s.station_id;
            out += ',' + fmt(s.bin_start_min + static_cast<double>(b) * s.bin_min);
            out += ',' + std::to_string(s.arrivals_per_bin[b]);
            out += '\n';
        }
    }
    return out;
}

std::string summary_json_text(std::span<const RunSummary> summaries, const ScenarioConfig& cfg) {
    ordered_json root;
    root["scheme"] = to_string(cfg.pricing.kind);
    root["mode"] = to_string(cfg.pricing.mode);
    root["seed"] = cfg.seed;
    root["replications"] = static_cast<long>(summaries.size());

    std::vector<ordered_json> reps;
    reps.reserve(summaries.size());
    for (const RunSummary& s : summaries) reps.push_back(summary_json(s));

    if (summaries.size() == 1) {
        root["summary"] = reps.front();
    } else {
        ordered_json mean, sd;
        aggregate(reps, mean, sd);
        root["mean"] = std::move(mean);
        root["sd"] = std::move(sd);
        root["per_replication"] = reps;
    }
    return root.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write \"" + path + "\"");
    out << content;
}

}  // namespace evsim
