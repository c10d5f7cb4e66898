#pragma once

#include <cstdint>

#include "evsim/scenario.hpp"

namespace evsim {

// Synthetic square-grid city: g x g zones, a flagship station downtown with
// the rest ringing it, and gravity-style OD rates peaking in the morning and
// evening periods. Demand pulls toward two poles, the downtown core and a
// dense east-side district, so the east anchor station runs hot while the
// west side of the ring stays quiet. Defaults reproduce the bundled
// congested demo used by the acceptance checks.
struct GridDemoParams {
    int grid = 3;
    double zone_size_mi = 5.5;
    int stations = 6;
    int chargers_min = 5;
    int chargers_max = 5;
    double base_price = 5.0;
    double base_rate_per_hour = 4.0;  // rate scale before distance decay
    // Relative pull of the two demand poles; 0 spreads demand evenly across
    // zones. Raising it concentrates load on the downtown flagship and on
    // whichever ring station anchors the east side of the city.
    double core_boost = 30.0;
    // When > 0, every OD rate is rescaled so the expected demand:supply ratio
    // of the generated scenario lands near this value.
    double target_ratio = 0.4;
    std::uint64_t seed = 101;
    PricingScheme pricing;
};

ScenarioConfig make_grid_demo(const GridDemoParams& params);

}  // namespace evsim
