#include "evsim/station.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace evsim {

Station::Station(StationSpec spec, PricingScheme scheme, int index)
    : spec_(std::move(spec)), scheme_(scheme), index_(index) {
    if (spec_.chargers < 1) throw std::invalid_argument("station: chargers must be >= 1");
    price_.base = spec_.base_price;
    price_.current = price_for_queue(scheme_, price_.base, 0);
    in_service_.reserve(static_cast<std::size_t>(spec_.chargers));
}

Station::Started Station::start_service(int customer, double arrival_min, double locked_price,
                                        double now, const DurationFn& sample_duration) {
    const double duration = sample_duration(customer);
    if (duration < 0.0) throw std::logic_error("station: negative service duration");
    InService s{customer, arrival_min, now, now + duration, locked_price};
    in_service_.push_back(s);
    return Started{customer, s.start_min, s.end_min};
}

Station::ArriveResult Station::arrive(int customer, double now, const DurationFn& sample_duration) {
    ++arrivals_;
    arrival_times_.push_back(now);
    const double locked = price_.current;
    if (free_chargers() > 0) {
        return {true, start_service(customer, now, locked, now, sample_duration)};
    }
    queue_.push_back(Waiting{customer, now, locked});
    price_ = on_queue_change(price_, scheme_, queue_length());
    return {false, std::nullopt};
}

Station::CompleteResult Station::complete_service(int customer, double now,
                                                  const DurationFn& sample_duration) {
    auto it = std::find_if(in_service_.begin(), in_service_.end(),
                           [customer](const InService& s) { return s.customer == customer; });
    if (it == in_service_.end()) {
        throw std::logic_error("station: complete_service for a customer not in service");
    }

    ServiceRecord rec;
    rec.customer = it->customer;
    rec.station = index_;
    rec.arrival_min = it->arrival_min;
    rec.service_start_min = it->start_min;
    rec.service_end_min = it->end_min;
    rec.locked_price = it->locked_price;
    rec.payment = it->locked_price * (it->end_min - it->start_min) / 60.0;
    in_service_.erase(it);
    records_.push_back(rec);
    revenue_ += rec.payment;

    CompleteResult out{rec, std::nullopt};
    if (!queue_.empty()) {
        const Waiting w = queue_.front();
        queue_.pop_front();
        out.next_started = start_service(w.customer, w.arrival_min, w.locked_price, now,
                                         sample_duration);
        price_ = on_queue_change(price_, scheme_, queue_length());
    }
    return out;
}

double sample_service_time(double soc_at_station, double dist_to_dest_mi,
                           const MobilityParams& mobility, double extra_mean_min, Rng& rng) {
    const double full_cap_min =
        std::max(0.0, (1.0 - soc_at_station) * mobility.range_full_mi) /
        mobility.charge_rate_mi_per_min;
    const double deterministic =
        deterministic_charge_minutes(soc_at_station, dist_to_dest_mi, mobility);
    const double extra =
        std::min(rng.exponential(extra_mean_min), full_cap_min - deterministic);
    return deterministic + extra;
}

}  // namespace evsim
