#include "evsim/demand.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_map>

#include "evsim/errors.hpp"

namespace evsim {

std::vector<EvRequest> generate_requests(std::span<const Zone> zones,
                                         std::span<const OdPeriodRate> od_rates,
                                         const DemandParams& params, Rng& rng) {
    std::unordered_map<std::string_view, const Zone*> by_id;
    for (const Zone& z : zones) by_id.emplace(z.id, &z);

    std::vector<EvRequest> out;
    for (std::size_t k = 0; k < od_rates.size(); ++k) {
        const OdPeriodRate& od = od_rates[k];
        const auto oi = by_id.find(od.origin_zone);
        if (oi == by_id.end()) {
            throw ConfigError("od_rates[" + std::to_string(k) + "].origin: unknown zone id \"" +
                              od.origin_zone + "\"");
        }
        const auto di = by_id.find(od.dest_zone);
        if (di == by_id.end()) {
            throw ConfigError("od_rates[" + std::to_string(k) + "].dest: unknown zone id \"" +
                              od.dest_zone + "\"");
        }
        const Zone& oz = *oi->second;
        const Zone& dz = *di->second;

        const double rate_per_hour = od.trips_per_hour * params.penetration_multiplier;
        if (rate_per_hour <= 0.0) continue;
        const double w0 = std::max(od.period_start_min, params.sim_start_min);
        const double w1 = std::min(od.period_end_min, params.sim_end_min);
        if (w0 >= w1) continue;

        const double mean_gap_min = 60.0 / rate_per_hour;
        for (double t = w0 + rng.exponential(mean_gap_min); t < w1;
             t += rng.exponential(mean_gap_min)) {
            EvRequest r;
            r.spawn_min = t;
            r.origin = Point{rng.uniform(oz.xmin, oz.xmax), rng.uniform(oz.ymin, oz.ymax)};
            r.dest = Point{rng.uniform(dz.xmin, dz.xmax), rng.uniform(dz.ymin, dz.ymax)};
            r.soc = rng.truncated_normal(params.soc_mean, params.soc_sd, 0.0, 1.0);
            r.threshold = rng.truncated_normal(params.threshold_mean, params.threshold_sd, 0.0, 1.0);
            r.reroutes_left = params.reroute_budget;
            out.push_back(r);
        }
    }

    std::stable_sort(out.begin(), out.end(),
                     [](const EvRequest& a, const EvRequest& b) { return a.spawn_min < b.spawn_min; });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].id = static_cast<int>(i);
    return out;
}

bool needs_fast_charge(const EvRequest& req, const MobilityParams& mobility) {
    const double trip_mi = manhattan_distance(req.origin, req.dest);
    return req.soc - soc_consumed(trip_mi, mobility) < req.threshold;
}

}  // namespace evsim
