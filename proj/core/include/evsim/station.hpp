#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "evsim/geometry.hpp"
#include "evsim/mobility.hpp"
#include "evsim/pricing.hpp"
#include "evsim/rng.hpp"

namespace evsim {

struct StationSpec {
    std::string id;
    Point location;
    int chargers = 1;         // identical fast chargers
    double base_price = 5.0;  // $/hour
};

// One completed charging session.
struct ServiceRecord {
    int customer = -1;
    int station = -1;  // index into the scenario station list
    double arrival_min = 0.0;
    double service_start_min = 0.0;
    double service_end_min = 0.0;
    double locked_price = 0.0;  // $/hour posted when the customer committed
    double payment = 0.0;       // locked_price, pro-rated over the service time
};

// Multi-server FCFS queue at one charging station, driven by the event loop.
// The posted price is recomputed through the pricing scheme on every change
// of the waiting count, in both directions; each customer pays the price that
// was posted at the moment they committed (queue join or immediate start).
class Station {
public:
    // Service duration in minutes, sampled when service actually starts.
    using DurationFn = std::function<double(int customer)>;

    struct Started {
        int customer = -1;
        double start_min = 0.0;
        double end_min = 0.0;
    };

    Station(StationSpec spec, PricingScheme scheme, int index);

    struct ArriveResult {
        bool immediate = false;
        std::optional<Started> started;
    };

    // Customer commits to this station: service starts now if a charger is
    // free, otherwise they join the queue tail at the current posted price.
    ArriveResult arrive(int customer, double now, const DurationFn& sample_duration);

    struct CompleteResult {
        ServiceRecord finished;
        std::optional<Started> next_started;
    };

    // Service-end event for `customer`. Pulls the queue head onto the freed
    // charger, if anyone is waiting.
    CompleteResult complete_service(int customer, double now, const DurationFn& sample_duration);

    int free_chargers() const { return spec_.chargers - static_cast<int>(in_service_.size()); }
    long queue_length() const { return static_cast<long>(queue_.size()); }
    bool work_conserving() const { return queue_.empty() || free_chargers() == 0; }
    double current_price() const { return price_.current; }
    double base_price() const { return price_.base; }
    const StationSpec& spec() const { return spec_; }
    int index() const { return index_; }
    long arrivals() const { return arrivals_; }
    long served() const { return static_cast<long>(records_.size()); }
    double revenue() const { return revenue_; }
    const std::vector<ServiceRecord>& records() const { return records_; }
    const std::vector<double>& arrival_times() const { return arrival_times_; }

private:
    struct Waiting {
        int customer = -1;
        double arrival_min = 0.0;
        double locked_price = 0.0;
    };
    struct InService {
        int customer = -1;
        double arrival_min = 0.0;
        double start_min = 0.0;
        double end_min = 0.0;
        double locked_price = 0.0;
    };

    Started start_service(int customer, double arrival_min, double locked_price, double now,
                          const DurationFn& sample_duration);

    StationSpec spec_;
    PricingScheme scheme_;
    PriceState price_;
    int index_ = -1;
    std::deque<Waiting> queue_;
    std::vector<InService> in_service_;
    std::vector<ServiceRecord> records_;
    std::vector<double> arrival_times_;  // commitment times, feeds arrival-rate series
    long arrivals_ = 0;
    double revenue_ = 0.0;
};

// Charging minutes for a customer arriving with `soc_at_station`, still
// `dist_to_dest_mi` from their destination: the deterministic top-up needed to
// finish the trip plus an exponential extra-charge component, the sum capped
// at a full battery.
double sample_service_time(double soc_at_station, double dist_to_dest_mi,
                           const MobilityParams& mobility, double extra_mean_min, Rng& rng);

}  // namespace evsim
