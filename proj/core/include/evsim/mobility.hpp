#pragma once

#include <algorithm>

#include "evsim/geometry.hpp"

namespace evsim {

struct MobilityParams {
    double speed_mph = 50.0;
    double range_full_mi = 200.0;         // driving range on a full battery
    double charge_rate_mi_per_min = 3.2;  // range gained per minute on a fast charger
    double detour_max_mi = 10.0;          // willingness-to-detour bound
};

// Minutes to drive `dist_mi` at the fleet cruise speed.
inline double travel_time_min(double dist_mi, const MobilityParams& p) {
    return dist_mi / p.speed_mph * 60.0;
}

inline double reachable_miles(double soc, const MobilityParams& p) {
    return soc * p.range_full_mi;
}

inline double soc_consumed(double dist_mi, const MobilityParams& p) {
    return dist_mi / p.range_full_mi;
}

// Charging minutes needed to cover `dist_to_dest_mi` starting from `soc`,
// capped by the battery headroom (charging stops at a full battery).
inline double deterministic_charge_minutes(double soc, double dist_to_dest_mi,
                                           const MobilityParams& p) {
    const double shortfall = std::max(0.0, dist_to_dest_mi - reachable_miles(soc, p));
    const double headroom = std::max(0.0, (1.0 - soc) * p.range_full_mi);
    return std::min(shortfall, headroom) / p.charge_rate_mi_per_min;
}

}  // namespace evsim
