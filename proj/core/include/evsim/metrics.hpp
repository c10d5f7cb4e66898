#pragma once

#include <span>
#include <utility>
#include <vector>

#include "evsim/engine.hpp"
#include "evsim/scenario.hpp"

namespace evsim {

// Lost-rate slice for customers grouped by spawn-time choice-set size.
struct LostBucket {
    long customers = 0;
    long lost = 0;
    double lost_pct = 0.0;
};

struct RunSummary {
    long total_requests = 0;
    long served = 0;
    long lost = 0;
    double lost_pct = 0.0;

    long lost_empty_choice_set = 0;
    long lost_balked_spawn = 0;
    long lost_balked_arrival = 0;

    LostBucket by_choice_size_1;       // includes empty choice sets
    LostBucket by_choice_size_2;
    LostBucket by_choice_size_3plus;

    double avg_wait_min = 0.0;        // served customers; 0 when none served
    double avg_total_time_min = 0.0;  // wait + service, served customers
    double avg_detour_mi = 0.0;       // served customers

    double total_revenue_usd = 0.0;
    double disutility_served_avg_usd = 0.0;
    double disutility_all_avg_usd = 0.0;
    double monetized_total_disutility_usd = 0.0;

    double social_welfare_usd = 0.0;
    // Same quantity with the payment transfers cancelled algebraically;
    // agreement with social_welfare_usd is asserted on every run.
    double social_welfare_payment_free_usd = 0.0;

    double demand_supply_ratio = 0.0;
    double mean_service_estimate_min = 0.0;
    double peak_avg_queue = 0.0;
};

// Charging demand relative to charging capacity over the studied window.
double demand_supply_ratio(long n_requests, double mean_service_min, long total_chargers,
                           double window_min);

// Percentage-point change in lost customers attributable to a price
// adjustment, against a no-adjustment baseline on identical demand.
double relative_lost_pct(long lost_adjusted, long lost_baseline, long total_requests);

double avg_wait_min(std::span<const CustomerOutcome> outcomes);
double avg_total_time_min(std::span<const CustomerOutcome> outcomes);

// Dollar-valued utility of one outcome: served customers accrue the payment,
// detour, and wait converted at the choice-model trade-offs; lost customers
// carry the monetized leave-the-system utility.
double monetized_utility_usd(const CustomerOutcome& outcome, const ChoiceParams& choice,
                             bool lost_value_rounded);

// Operator revenue plus total monetized customer utility.
double social_welfare(double total_revenue_usd, double monetized_total_disutility_usd);

// Mean queue length over station-minutes inside the peak windows.
double peak_avg_queue(std::span<const StationSeries> series,
                      std::span<const std::pair<double, double>> windows);

RunSummary summarize(const RunResult& result, const ScenarioConfig& cfg);

}  // namespace evsim
