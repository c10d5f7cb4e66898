#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "evsim/choice.hpp"
#include "evsim/demand.hpp"
#include "evsim/errors.hpp"
#include "evsim/geometry.hpp"
#include "evsim/mobility.hpp"
#include "evsim/pricing.hpp"
#include "evsim/station.hpp"

namespace evsim {

struct MetricsConfig {
    double lambda_bin_min = 10.0;
    // Half-open [start, end) windows over which the peak average queue is
    // taken; defaults to the morning and evening rush.
    std::vector<std::pair<double, double>> peak_windows{{360.0, 600.0}, {900.0, 1140.0}};
    // Report lost customers at -18.5 dollars instead of the exact
    // no_charge_utility / |beta_price| conversion.
    bool lost_value_rounded = false;
};

struct ScenarioConfig {
    std::uint64_t seed = 1;
    int replications = 1;

    std::vector<Zone> zones;
    std::vector<StationSpec> stations;
    std::vector<OdPeriodRate> od_rates;

    MobilityParams mobility;
    DemandParams demand;  // also carries the simulation window and reroute budget
    ChoiceParams choice;
    PricingScheme pricing;
    double extra_charge_mean_min = 10.0;

    MetricsConfig metrics;
    std::string output_dir = "out";
};

// Parse + validate a scenario from a JSON file or string. Unknown fields are
// rejected; every error message names the offending field and constraint.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& json_text);

// Structural validation shared by parsing and programmatic construction.
void validate(const ScenarioConfig& cfg);

// Full round-trippable JSON form, all defaults spelled out.
std::string to_json_string(const ScenarioConfig& cfg);

}  // namespace evsim
