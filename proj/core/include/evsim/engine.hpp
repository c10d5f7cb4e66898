#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "evsim/demand.hpp"
#include "evsim/scenario.hpp"
#include "evsim/station.hpp"

namespace evsim {

enum class OutcomeStatus { Served, Lost };

enum class LostReason { None, EmptyChoiceSet, BalkedAtSpawn, BalkedAtArrival };

const char* to_string(OutcomeStatus s);
const char* to_string(LostReason r);

// Final disposition of one charging request.
struct CustomerOutcome {
    int id = -1;
    double spawn_min = 0.0;
    Point origin;
    Point dest;
    int choice_set_size_at_spawn = 0;
    OutcomeStatus status = OutcomeStatus::Lost;
    LostReason lost_reason = LostReason::None;
    int station = -1;  // final station index when served
    double wait_min = 0.0;
    double service_min = 0.0;
    double detour_mi = 0.0;  // total extra miles across every reroute leg
    double payment_usd = 0.0;
};

struct MinuteSample {
    long minute = 0;
    long queue_len = 0;
    double price = 0.0;
    long cum_arrivals = 0;
};

// Per-minute state trace plus binned arrival counts for one station.
struct StationSeries {
    std::string station_id;
    std::vector<MinuteSample> samples;
    std::vector<long> arrivals_per_bin;
    double bin_min = 10.0;
    double bin_start_min = 0.0;
};

struct RunResult {
    std::vector<EvRequest> requests;        // trips that needed a fast charge
    std::vector<CustomerOutcome> outcomes;  // one per request, in request order
    std::vector<ServiceRecord> records;     // every completed session
    std::vector<StationSeries> series;
    std::vector<double> station_revenue;
    double mean_service_estimate_min = 0.0;  // the E[S] quoted in expected waits
    std::uint64_t event_hash = 0;            // order-sensitive digest of the event log
    long events_processed = 0;
};

// One replication, fully deterministic in (cfg.seed, replication). Demand and
// in-simulation sampling use separate substreams, so runs that differ only in
// the pricing scheme face an identical trip stream.
RunResult run_simulation(const ScenarioConfig& cfg, std::uint32_t replication);

}  // namespace evsim
