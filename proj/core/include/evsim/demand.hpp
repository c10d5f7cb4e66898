#pragma once

#include <span>
#include <string>
#include <vector>

#include "evsim/geometry.hpp"
#include "evsim/mobility.hpp"
#include "evsim/rng.hpp"

namespace evsim {

// Poisson trip rate for one origin-destination zone pair over one time period.
struct OdPeriodRate {
    double period_start_min = 0.0;
    double period_end_min = 0.0;
    std::string origin_zone;
    std::string dest_zone;
    double trips_per_hour = 0.0;
};

struct EvRequest {
    int id = -1;
    double spawn_min = 0.0;
    Point origin;
    Point dest;
    double soc = 1.0;        // state of charge, fraction of a full battery
    double threshold = 0.0;  // recharge when projected arrival SOC falls below this
    int reroutes_left = 1;
};

struct DemandParams {
    double penetration_multiplier = 1.0;
    double soc_mean = 0.6;
    double soc_sd = 0.2;
    double threshold_mean = 0.5;
    double threshold_sd = 0.1;
    double sim_start_min = 360.0;  // 06:00
    double sim_end_min = 1140.0;   // 19:00
    int reroute_budget = 1;
};

// Time-ordered trip stream: per OD rate row, a Poisson process over the
// intersection of the row's period and the simulation window, with SOC and
// threshold drawn from truncated normals on [0, 1]. Ids follow spawn order.
std::vector<EvRequest> generate_requests(std::span<const Zone> zones,
                                         std::span<const OdPeriodRate> od_rates,
                                         const DemandParams& params, Rng& rng);

// Entry rule for the fast-charging system: the SOC projected at the
// destination falls below the driver's recharge threshold.
bool needs_fast_charge(const EvRequest& req, const MobilityParams& mobility);

}  // namespace evsim
