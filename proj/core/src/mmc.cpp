#include "evsim/mmc.hpp"

#include <queue>
#include <stdexcept>
#include <vector>

#include "evsim/rng.hpp"
#include "evsim/station.hpp"

namespace evsim {

namespace {

void check_params(const MmcParams& p) {
    if (p.lambda <= 0.0 || p.mu <= 0.0) {
        throw std::invalid_argument("mmc: lambda and mu must be > 0");
    }
    if (p.servers < 1) throw std::invalid_argument("mmc: servers must be >= 1");
}

}  // namespace

double erlang_c(const MmcParams& p) {
    check_params(p);
    const double a = p.lambda / p.mu;
    const double rho = a / p.servers;
    if (rho >= 1.0) throw std::domain_error("mmc: utilization must be < 1 for steady state");

    // term tracks a^k / k! across the loop, so the sum stays stable without
    // explicit factorials.
    double term = 1.0;
    double sum = 0.0;
    for (int k = 0; k < p.servers; ++k) {
        sum += term;
        term *= a / (k + 1);
    }
    const double tail = term / (1.0 - rho);
    return tail / (sum + tail);
}

MmcMetrics mmc_metrics(const MmcParams& p) {
    const double pw = erlang_c(p);
    const double rho = p.lambda / (p.mu * p.servers);
    MmcMetrics m;
    m.p_wait = pw;
    m.lq = pw * rho / (1.0 - rho);
    m.wq_min = m.lq / p.lambda;
    return m;
}

MmcSimResult simulate_mmc(const MmcParams& p, long n_arrivals, std::uint64_t seed) {
    check_params(p);
    if (n_arrivals < 1) throw std::invalid_argument("mmc: n_arrivals must be >= 1");

    Rng rng(seed, Rng::Stream::Sim);
    Station station(StationSpec{"mmc", Point{0.0, 0.0}, p.servers, 1.0}, PricingScheme{}, 0);
    const auto duration = [&](int) { return rng.exponential(1.0 / p.mu); };

    struct Ev {
        double t;
        std::uint64_t seq;
        bool is_arrival;
        int customer;
    };
    struct Later {
        bool operator()(const Ev& a, const Ev& b) const {
            if (a.t != b.t) return a.t > b.t;
            return a.seq > b.seq;
        }
    };
    std::priority_queue<Ev, std::vector<Ev>, Later> events;

    std::uint64_t seq = 0;
    long spawned = 0;
    events.push(Ev{rng.exponential(1.0 / p.lambda), seq++, true, 0});
    ++spawned;

    double last_t = 0.0;
    double q_area = 0.0;
    while (!events.empty()) {
        const Ev ev = events.top();
        events.pop();
        q_area += static_cast<double>(station.queue_length()) * (ev.t - last_t);
        last_t = ev.t;

        if (ev.is_arrival) {
            const auto res = station.arrive(ev.customer, ev.t, duration);
            if (res.immediate) {
                events.push(Ev{res.started->end_min, seq++, false, ev.customer});
            }
            if (spawned < n_arrivals) {
                events.push(Ev{ev.t + rng.exponential(1.0 / p.lambda), seq++, true,
                               static_cast<int>(spawned)});
                ++spawned;
            }
        } else {
            const auto res = station.complete_service(ev.customer, ev.t, duration);
            if (res.next_started) {
                events.push(Ev{res.next_started->end_min, seq++, false,
                               res.next_started->customer});
            }
        }
    }

    MmcSimResult out;
    out.arrivals = spawned;
    out.horizon_min = last_t;
    out.lq = last_t > 0.0 ? q_area / last_t : 0.0;
    double wait_sum = 0.0;
    long waited = 0;
    for (const ServiceRecord& r : station.records()) {
        const double w = r.service_start_min - r.arrival_min;
        wait_sum += w;
        if (w > 0.0) ++waited;
    }
    const long n = station.served();
    out.wq_min = n > 0 ? wait_sum / static_cast<double>(n) : 0.0;
    out.p_wait = n > 0 ? static_cast<double>(waited) / static_cast<double>(n) : 0.0;
    return out;
}

}  // namespace evsim
