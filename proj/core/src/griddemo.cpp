#include "evsim/griddemo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "evsim/demand.hpp"

namespace evsim {

namespace {

// Expected demand:supply ratio of `cfg`, estimated by generating a handful of
// independent demand replications and averaging the entry-rule survivors.
double estimate_ratio(const ScenarioConfig& cfg) {
    constexpr int kReps = 5;
    constexpr std::uint32_t kProbeBase = 900000;  // clear of real replication ids
    long count = 0;
    double det_sum = 0.0;
    for (int r = 0; r < kReps; ++r) {
        Rng rng(cfg.seed, Rng::Stream::Demand, kProbeBase + static_cast<std::uint32_t>(r));
        for (const EvRequest& t : generate_requests(cfg.zones, cfg.od_rates, cfg.demand, rng)) {
            if (!needs_fast_charge(t, cfg.mobility)) continue;
            ++count;
            det_sum += deterministic_charge_minutes(
                t.soc, manhattan_distance(t.origin, t.dest), cfg.mobility);
        }
    }
    if (count == 0) return 0.0;
    const double mean_service =
        cfg.extra_charge_mean_min + det_sum / static_cast<double>(count);
    long chargers = 0;
    for (const StationSpec& s : cfg.stations) chargers += s.chargers;
    const double window = cfg.demand.sim_end_min - cfg.demand.sim_start_min;
    const double per_rep = static_cast<double>(count) / kReps;
    return per_rep * mean_service / (static_cast<double>(chargers) * window);
}

}  // namespace

ScenarioConfig make_grid_demo(const GridDemoParams& params) {
    if (params.grid < 1) throw std::invalid_argument("grid demo: grid must be >= 1");
    if (params.stations < 1) throw std::invalid_argument("grid demo: stations must be >= 1");
    if (params.chargers_min < 1 || params.chargers_max < params.chargers_min) {
        throw std::invalid_argument("grid demo: need 1 <= chargers_min <= chargers_max");
    }
    if (!(params.zone_size_mi > 0.0)) {
        throw std::invalid_argument("grid demo: zone_size_mi must be > 0");
    }
    if (params.core_boost < 0.0) {
        throw std::invalid_argument("grid demo: core_boost must be >= 0");
    }

    ScenarioConfig cfg;
    cfg.seed = params.seed;
    cfg.pricing = params.pricing;
    // Drivers arrive mid-charge with a tight spread, so even the low tail of
    // the battery distribution can reach a station anywhere in the city, and
    // sit mostly below their comfort threshold so the whole stream shops for
    // a charge regardless of trip length.
    cfg.demand.soc_mean = 0.5;
    cfg.demand.soc_sd = 0.1;
    cfg.demand.threshold_mean = 0.65;
    cfg.extra_charge_mean_min = 14.0;

    const int g = params.grid;
    const double span = g * params.zone_size_mi;

    for (int r = 0; r < g; ++r) {
        for (int c = 0; c < g; ++c) {
            Zone z;
            z.id = "z" + std::to_string(r * g + c);
            z.xmin = c * params.zone_size_mi;
            z.xmax = (c + 1) * params.zone_size_mi;
            z.ymin = r * params.zone_size_mi;
            z.ymax = (r + 1) * params.zone_size_mi;
            cfg.zones.push_back(std::move(z));
        }
    }

    // A flagship station sits downtown; the rest ring the city so every
    // district keeps a reachable fallback that still costs a real detour
    // from the core. Fully uniform placement tends to either strand
    // districts or make stations interchangeable.
    Rng rng(params.seed, Rng::Stream::Scenario);
    const Point downtown{span / 2.0, span / 2.0};
    const auto clamped = [&](double x, double y) {
        const double lo = 0.03 * span, hi = 0.97 * span;
        return Point{std::clamp(x, lo, hi), std::clamp(y, lo, hi)};
    };
    constexpr double kTau = 6.28318530717958648;
    for (int i = 0; i < params.stations; ++i) {
        StationSpec s;
        s.id = "s" + std::to_string(i);
        if (i == 0) {
            s.location = clamped(downtown.x + span * rng.uniform(-0.04, 0.04),
                                 downtown.y + span * rng.uniform(-0.04, 0.04));
        } else {
            const double angle = kTau * (i - 1) / (params.stations - 1) +
                                 rng.uniform(-0.15, 0.15);
            const double radius = span * rng.uniform(0.32, 0.40);
            s.location = clamped(downtown.x + radius * std::cos(angle),
                                 downtown.y + radius * std::sin(angle));
        }
        s.chargers = rng.uniform_int(params.chargers_min, params.chargers_max);
        s.base_price = params.base_price;
        cfg.stations.push_back(std::move(s));
    }

    // Morning and evening rushes bracket a quieter midday, and rates decay
    // with the zone-center separation.
    struct Period {
        double start, end, weight;
    };
    const Period periods[] = {{360.0, 600.0, 1.0}, {600.0, 900.0, 0.5}, {900.0, 1140.0, 0.9}};
    const double decay_mi = span / 2.0;

    const auto center = [&](int zi) {
        const int r = zi / g;
        const int c = zi % g;
        return Point{(c + 0.5) * params.zone_size_mi, (r + 0.5) * params.zone_size_mi};
    };

    const Point east_district{0.85 * span, 0.5 * span};
    const auto zone_weight = [&](int zi) {
        const double tau = span / 8.0;
        const double pull =
            std::exp(-manhattan_distance(center(zi), downtown) / tau) +
            std::exp(-manhattan_distance(center(zi), east_district) / tau);
        return 1.0 + params.core_boost * pull;
    };

    // Trip rates follow a gravity shape damped at very short separations:
    // intra-zone errands rarely route past a fast charger, and keeping them
    // out means every generated trip has a real corridor to hang a stop on.
    constexpr double kShortHaulMi = 3.0;
    for (const Period& p : periods) {
        for (int o = 0; o < g * g; ++o) {
            for (int d = 0; d < g * g; ++d) {
                const double dist = manhattan_distance(center(o), center(d));
                const double rate = params.base_rate_per_hour * p.weight * zone_weight(o) *
                                    zone_weight(d) * std::exp(-dist / decay_mi) *
                                    (1.0 - std::exp(-dist / kShortHaulMi));
                if (rate <= 0.0) continue;
                OdPeriodRate od;
                od.period_start_min = p.start;
                od.period_end_min = p.end;
                od.origin_zone = "z" + std::to_string(o);
                od.dest_zone = "z" + std::to_string(d);
                od.trips_per_hour = rate;
                cfg.od_rates.push_back(std::move(od));
            }
        }
    }

    if (params.target_ratio > 0.0) {
        const double measured = estimate_ratio(cfg);
        if (measured > 0.0) {
            const double scale = params.target_ratio / measured;
            for (OdPeriodRate& od : cfg.od_rates) od.trips_per_hour *= scale;
        }
    }

    validate(cfg);
    return cfg;
}

}  // namespace evsim
