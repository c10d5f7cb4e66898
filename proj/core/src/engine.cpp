#include "evsim/engine.hpp"

#include <bit>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "evsim/choice.hpp"

namespace evsim {

namespace {

enum class EventKind : std::uint8_t { Spawn = 0, StationArrival = 1, ServiceEnd = 2 };

struct Event {
    double time = 0.0;
    std::uint64_t seq = 0;  // insertion order breaks time ties deterministically
    EventKind kind = EventKind::Spawn;
    int customer = -1;
    int station = -1;
};

struct Later {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.seq > b.seq;
    }
};

struct Agent {
    Point pos;
    double soc = 0.0;
    int reroutes_left = 0;
    double detour_mi = 0.0;
    bool done = false;
};

std::uint64_t fnv1a(std::uint64_t h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xffu;
        h *= 0x100000001b3ull;
    }
    return h;
}

class Sim {
public:
    Sim(const ScenarioConfig& cfg, std::uint32_t replication)
        : cfg_(cfg),
          demand_rng_(cfg.seed, Rng::Stream::Demand, replication),
          sim_rng_(cfg.seed, Rng::Stream::Sim, replication) {}

    RunResult run();

private:
    void handle_spawn(int cid, double now);
    void handle_arrival(int cid, int sidx, double now);
    void handle_service_end(int cid, int sidx, double now);

    std::vector<Alternative> make_alternatives(const Agent& agent, const Point& dest,
                                               const std::vector<int>& set, int current_station);
    void commit_travel(int cid, const Alternative& alt, double now);
    void join_station(int cid, int sidx, double now);
    void finish_lost(int cid, LostReason reason);
    void finish_served(int cid, const ServiceRecord& rec);

    void schedule(double time, EventKind kind, int customer, int station) {
        events_.push(Event{time, seq_++, kind, customer, station});
    }

    Station::DurationFn duration_fn(int sidx) {
        return [this, sidx](int cid) {
            const Agent& agent = agents_[static_cast<std::size_t>(cid)];
            const double dist =
                manhattan_distance(stations_[static_cast<std::size_t>(sidx)].spec().location,
                                   result_.requests[static_cast<std::size_t>(cid)].dest);
            return sample_service_time(agent.soc, dist, cfg_.mobility,
                                       cfg_.extra_charge_mean_min, sim_rng_);
        };
    }

    void sample_series_until(double t);
    void record_minute(long minute);
    void finalize_series(double last_event_time);

    const ScenarioConfig& cfg_;
    Rng demand_rng_;
    Rng sim_rng_;

    std::vector<Station> stations_;
    std::vector<Agent> agents_;
    std::priority_queue<Event, std::vector<Event>, Later> events_;
    std::uint64_t seq_ = 0;

    long next_minute_ = 0;
    long last_minute_ = 0;
    std::vector<std::vector<MinuteSample>> minute_rows_;

    RunResult result_;
};

RunResult Sim::run() {
    validate(cfg_);

    const std::vector<EvRequest> trips =
        generate_requests(cfg_.zones, cfg_.od_rates, cfg_.demand, demand_rng_);
    result_.requests.reserve(trips.size());
    for (const EvRequest& t : trips) {
        if (needs_fast_charge(t, cfg_.mobility)) result_.requests.push_back(t);
    }

    // Fleet-average session length, used both for quoted waits and for the
    // demand:supply ratio. Falls back to the extra-charge mean with no demand.
    double det_sum = 0.0;
    for (const EvRequest& r : result_.requests) {
        det_sum += deterministic_charge_minutes(r.soc, manhattan_distance(r.origin, r.dest),
                                                cfg_.mobility);
    }
    result_.mean_service_estimate_min =
        cfg_.extra_charge_mean_min +
        (result_.requests.empty() ? 0.0
                                  : det_sum / static_cast<double>(result_.requests.size()));

    stations_.reserve(cfg_.stations.size());
    for (std::size_t i = 0; i < cfg_.stations.size(); ++i) {
        stations_.emplace_back(cfg_.stations[i], cfg_.pricing, static_cast<int>(i));
    }

    agents_.resize(result_.requests.size());
    result_.outcomes.resize(result_.requests.size());
    for (std::size_t i = 0; i < result_.requests.size(); ++i) {
        const EvRequest& r = result_.requests[i];
        agents_[i] = Agent{r.origin, r.soc, r.reroutes_left, 0.0, false};
        CustomerOutcome& o = result_.outcomes[i];
        o.id = r.id;
        o.spawn_min = r.spawn_min;
        o.origin = r.origin;
        o.dest = r.dest;
        schedule(r.spawn_min, EventKind::Spawn, static_cast<int>(i), -1);
    }

    next_minute_ = static_cast<long>(std::floor(cfg_.demand.sim_start_min));
    last_minute_ = static_cast<long>(std::floor(cfg_.demand.sim_end_min));
    minute_rows_.resize(stations_.size());

    double last_event_time = cfg_.demand.sim_start_min;
    while (!events_.empty()) {
        const Event ev = events_.top();
        events_.pop();
        sample_series_until(ev.time);
        last_event_time = ev.time;

        std::uint64_t h = result_.event_hash;
        h = fnv1a(h, std::bit_cast<std::uint64_t>(ev.time));
        h = fnv1a(h, ev.seq);
        h = fnv1a(h, static_cast<std::uint64_t>(ev.kind));
        h = fnv1a(h, static_cast<std::uint64_t>(static_cast<std::uint32_t>(ev.customer)));
        h = fnv1a(h, static_cast<std::uint64_t>(static_cast<std::uint32_t>(ev.station)));
        result_.event_hash = h;
        ++result_.events_processed;

        switch (ev.kind) {
            case EventKind::Spawn: handle_spawn(ev.customer, ev.time); break;
            case EventKind::StationArrival: handle_arrival(ev.customer, ev.station, ev.time); break;
            case EventKind::ServiceEnd: handle_service_end(ev.customer, ev.station, ev.time); break;
        }

        if (ev.station >= 0 && !stations_[static_cast<std::size_t>(ev.station)].work_conserving()) {
            throw std::logic_error("engine: idle charger with a nonempty queue at station " +
                                   stations_[static_cast<std::size_t>(ev.station)].spec().id);
        }
    }

    finalize_series(last_event_time);

    for (const Station& st : stations_) {
        for (const ServiceRecord& rec : st.records()) result_.records.push_back(rec);
        result_.station_revenue.push_back(st.revenue());
    }
    return result_;
}

void Sim::handle_spawn(int cid, double now) {
    Agent& agent = agents_[static_cast<std::size_t>(cid)];
    const EvRequest& req = result_.requests[static_cast<std::size_t>(cid)];
    const std::vector<int> set =
        build_choice_set(agent.pos, req.dest, agent.soc, cfg_.stations, cfg_.mobility);
    result_.outcomes[static_cast<std::size_t>(cid)].choice_set_size_at_spawn =
        static_cast<int>(set.size());

    if (set.empty()) {
        finish_lost(cid, LostReason::EmptyChoiceSet);
        return;
    }
    const std::vector<Alternative> alts = make_alternatives(agent, req.dest, set, -1);
    const int pick = sample_choice(alts, cfg_.choice, sim_rng_);
    if (alts[static_cast<std::size_t>(pick)].station == kNoCharge) {
        finish_lost(cid, LostReason::BalkedAtSpawn);
        return;
    }
    commit_travel(cid, alts[static_cast<std::size_t>(pick)], now);
}

void Sim::handle_arrival(int cid, int sidx, double now) {
    Agent& agent = agents_[static_cast<std::size_t>(cid)];
    const EvRequest& req = result_.requests[static_cast<std::size_t>(cid)];
    Station& st = stations_[static_cast<std::size_t>(sidx)];
    agent.pos = st.spec().location;

    if (st.free_chargers() > 0) {
        join_station(cid, sidx, now);
        return;
    }

    // All chargers busy on arrival: with reroute budget left the customer
    // reconsiders from here, with staying put as the first alternative.
    if (agent.reroutes_left > 0) {
        std::vector<int> others =
            build_choice_set(agent.pos, req.dest, agent.soc, cfg_.stations, cfg_.mobility);
        std::erase(others, sidx);
        std::vector<int> set;
        set.reserve(others.size() + 1);
        set.push_back(sidx);
        set.insert(set.end(), others.begin(), others.end());

        const std::vector<Alternative> alts = make_alternatives(agent, req.dest, set, sidx);
        const int pick = sample_choice(alts, cfg_.choice, sim_rng_);
        const Alternative& alt = alts[static_cast<std::size_t>(pick)];
        if (alt.station == kNoCharge) {
            finish_lost(cid, LostReason::BalkedAtArrival);
            return;
        }
        if (alt.station != sidx) {
            agent.reroutes_left -= 1;
            commit_travel(cid, alt, now);
            return;
        }
    }
    join_station(cid, sidx, now);
}

void Sim::handle_service_end(int cid, int sidx, double now) {
    Station& st = stations_[static_cast<std::size_t>(sidx)];
    const Station::CompleteResult res = st.complete_service(cid, now, duration_fn(sidx));
    finish_served(cid, res.finished);
    if (res.next_started) {
        schedule(res.next_started->end_min, EventKind::ServiceEnd, res.next_started->customer,
                 sidx);
    }
}

std::vector<Alternative> Sim::make_alternatives(const Agent& agent, const Point& dest,
                                                const std::vector<int>& set,
                                                int current_station) {
    std::vector<Alternative> alts;
    alts.reserve(set.size() + 1);
    for (const int idx : set) {
        const Station& st = stations_[static_cast<std::size_t>(idx)];
        Alternative a;
        a.station = idx;
        a.detour_mi = idx == current_station
                          ? 0.0
                          : detour_distance(agent.pos, dest, st.spec().location);
        a.wait_min = expected_wait(st.free_chargers(), st.queue_length(), st.spec().chargers,
                                   result_.mean_service_estimate_min);
        if (cfg_.choice.price_term_mode == ChoiceParams::PriceTerm::HourlyRate) {
            a.price_term = st.current_price();
        } else {
            // Expected payment: posted rate over the session the chooser can
            // anticipate (deterministic top-up from here plus the mean extra).
            const double soc_there =
                agent.soc - soc_consumed(manhattan_distance(agent.pos, st.spec().location),
                                         cfg_.mobility);
            const double expected_min =
                deterministic_charge_minutes(soc_there,
                                             manhattan_distance(st.spec().location, dest),
                                             cfg_.mobility) +
                cfg_.extra_charge_mean_min;
            a.price_term = st.current_price() * expected_min / 60.0;
        }
        alts.push_back(a);
    }
    alts.push_back(Alternative{kNoCharge, 0.0, 0.0, 0.0});
    return alts;
}

void Sim::commit_travel(int cid, const Alternative& alt, double now) {
    Agent& agent = agents_[static_cast<std::size_t>(cid)];
    const Station& st = stations_[static_cast<std::size_t>(alt.station)];
    const double dist = manhattan_distance(agent.pos, st.spec().location);
    agent.soc -= soc_consumed(dist, cfg_.mobility);
    agent.detour_mi += alt.detour_mi;
    schedule(now + travel_time_min(dist, cfg_.mobility), EventKind::StationArrival, cid,
             alt.station);
}

void Sim::join_station(int cid, int sidx, double now) {
    Station& st = stations_[static_cast<std::size_t>(sidx)];
    const Station::ArriveResult res = st.arrive(cid, now, duration_fn(sidx));
    if (res.started) {
        schedule(res.started->end_min, EventKind::ServiceEnd, cid, sidx);
    }
}

void Sim::finish_lost(int cid, LostReason reason) {
    Agent& agent = agents_[static_cast<std::size_t>(cid)];
    agent.done = true;
    CustomerOutcome& o = result_.outcomes[static_cast<std::size_t>(cid)];
    o.status = OutcomeStatus::Lost;
    o.lost_reason = reason;
    o.detour_mi = agent.detour_mi;
}

void Sim::finish_served(int cid, const ServiceRecord& rec) {
    Agent& agent = agents_[static_cast<std::size_t>(cid)];
    agent.done = true;
    CustomerOutcome& o = result_.outcomes[static_cast<std::size_t>(cid)];
    o.status = OutcomeStatus::Served;
    o.lost_reason = LostReason::None;
    o.station = rec.station;
    o.wait_min = rec.service_start_min - rec.arrival_min;
    o.service_min = rec.service_end_min - rec.service_start_min;
    o.detour_mi = agent.detour_mi;
    o.payment_usd = rec.payment;
}

void Sim::sample_series_until(double t) {
    while (next_minute_ <= last_minute_ && static_cast<double>(next_minute_) < t) {
        record_minute(next_minute_);
        ++next_minute_;
    }
}

void Sim::record_minute(long minute) {
    for (std::size_t i = 0; i < stations_.size(); ++i) {
        const Station& st = stations_[i];
        minute_rows_[i].push_back(
            MinuteSample{minute, st.queue_length(), st.current_price(), st.arrivals()});
    }
}

void Sim::finalize_series(double last_event_time) {
    while (next_minute_ <= last_minute_) {
        record_minute(next_minute_);
        ++next_minute_;
    }

    // Arrival bins cover the whole horizon including drain past the demand
    // cutoff, so the bin totals always add up to the commitment count.
    const double bin = cfg_.metrics.lambda_bin_min;
    const double start = cfg_.demand.sim_start_min;
    const double horizon = std::max(cfg_.demand.sim_end_min, last_event_time);
    const std::size_t n_bins =
        static_cast<std::size_t>(std::max(1.0, std::ceil((horizon - start) / bin)));

    result_.series.resize(stations_.size());
    for (std::size_t i = 0; i < stations_.size(); ++i) {
        StationSeries& s = result_.series[i];
        s.station_id = stations_[i].spec().id;
        s.samples = std::move(minute_rows_[i]);
        s.bin_min = bin;
        s.bin_start_min = start;
        s.arrivals_per_bin.assign(n_bins, 0);
        for (const double t : stations_[i].arrival_times()) {
            std::size_t b = static_cast<std::size_t>(std::floor((t - start) / bin));
            if (b >= n_bins) b = n_bins - 1;
            ++s.arrivals_per_bin[b];
        }
    }
}

}  // namespace

const char* to_string(OutcomeStatus s) {
    return s == OutcomeStatus::Served ? "served" : "lost";
}

const char* to_string(LostReason r) {
    switch (r) {
        case LostReason::None: return "";
        case LostReason::EmptyChoiceSet: return "empty_choice_set";
        case LostReason::BalkedAtSpawn: return "balked_at_spawn";
        case LostReason::BalkedAtArrival: return "balked_at_arrival";
    }
    return "";
}

RunResult run_simulation(const ScenarioConfig& cfg, std::uint32_t replication) {
    return Sim(cfg, replication).run();
}

}  // namespace evsim
