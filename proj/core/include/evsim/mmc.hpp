#pragma once

#include <cstdint>

namespace evsim {

// Single-station Markovian queue: Poisson arrivals, exponential service,
// `servers` identical channels, FCFS. Rates are per minute.
struct MmcParams {
    double lambda = 1.0;
    double mu = 1.0;
    int servers = 1;
};

struct MmcMetrics {
    double p_wait = 0.0;  // probability an arrival finds all servers busy
    double lq = 0.0;      // mean number waiting
    double wq_min = 0.0;  // mean wait in queue, minutes
};

// Erlang C delay probability. Requires lambda < servers * mu.
double erlang_c(const MmcParams& p);

MmcMetrics mmc_metrics(const MmcParams& p);

// Event-driven run of the same queue on the production station machinery:
// no choice model, no balking, fixed price. Used to validate the simulator
// against the closed-form results above.
struct MmcSimResult {
    double lq = 0.0;
    double wq_min = 0.0;
    double p_wait = 0.0;
    long arrivals = 0;
    double horizon_min = 0.0;
};

MmcSimResult simulate_mmc(const MmcParams& p, long n_arrivals, std::uint64_t seed);

}  // namespace evsim
