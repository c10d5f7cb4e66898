#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "evsim/engine.hpp"
#include "evsim/griddemo.hpp"
#include "evsim/metrics.hpp"

using namespace evsim;

namespace {

Zone tiny_zone(const std::string& id, double x, double y) {
    return {id, x - 0.001, y - 0.001, x + 0.001, y + 0.001};
}

// One station with ample capacity; deterministic attributes make the first
// customer's trajectory predictable to within the zone jitter.
ScenarioConfig ample_capacity_cfg() {
    ScenarioConfig cfg;
    cfg.zones = {tiny_zone("o", 0, 0), tiny_zone("d", 16, 0)};
    cfg.stations = {{"s0", {8, 0}, 20, 5.0}};
    cfg.od_rates = {{0, 240, "o", "d", 4.0}};
    cfg.demand.sim_start_min = 0;
    cfg.demand.sim_end_min = 240;
    cfg.demand.soc_mean = 0.05;
    cfg.demand.soc_sd = 0.0;
    cfg.demand.threshold_mean = 0.99;
    cfg.demand.threshold_sd = 0.0;
    cfg.extra_charge_mean_min = 0.0;
    cfg.seed = 11;
    return cfg;
}

// Two single-charger stations under heavy load: reroutes, queueing, and
// balking all occur, and every legal detour total is 0, 4, or 8 miles.
ScenarioConfig congested_cfg() {
    ScenarioConfig cfg;
    cfg.zones = {tiny_zone("o", 0, 0), tiny_zone("d", 40, 0)};
    cfg.stations = {{"s0", {20, 0}, 1, 5.0}, {"s1", {22, 2}, 1, 5.0}};
    cfg.od_rates = {{0, 120, "o", "d", 60.0}};
    cfg.demand.sim_start_min = 0;
    cfg.demand.sim_end_min = 120;
    cfg.demand.soc_mean = 0.5;
    cfg.demand.soc_sd = 0.0;
    cfg.demand.threshold_mean = 0.99;
    cfg.demand.threshold_sd = 0.0;
    cfg.seed = 21;
    return cfg;
}

void check_fcfs(const RunResult& result, int n_stations) {
    for (int s = 0; s < n_stations; ++s) {
        std::vector<ServiceRecord> recs;
        for (const ServiceRecord& r : result.records) {
            if (r.station == s) recs.push_back(r);
        }
        std::sort(recs.begin(), recs.end(), [](const ServiceRecord& a, const ServiceRecord& b) {
            return a.service_start_min < b.service_start_min;
        });
        for (std::size_t i = 1; i < recs.size(); ++i) {
            CHECK(recs[i].arrival_min >= recs[i - 1].arrival_min);
        }
    }
}

}  // namespace

TEST_CASE("zero demand still produces a full, quiet time series") {
    ScenarioConfig cfg = ample_capacity_cfg();
    cfg.od_rates[0].trips_per_hour = 0.0;
    const RunResult r = run_simulation(cfg, 0);
    CHECK(r.outcomes.empty());
    CHECK(r.records.empty());
    REQUIRE(r.series.size() == 1);
    CHECK(r.series[0].samples.size() == 241);  // minutes 0..240 inclusive
    for (const MinuteSample& m : r.series[0].samples) {
        CHECK(m.queue_len == 0);
        CHECK(m.price == 5.0);
        CHECK(m.cum_arrivals == 0);
    }
    const RunSummary s = summarize(r, cfg);
    CHECK(s.total_requests == 0);
    CHECK(s.served == 0);
    CHECK(s.social_welfare_usd == 0.0);
}

TEST_CASE("ample capacity: everyone is served without waiting") {
    const ScenarioConfig cfg = ample_capacity_cfg();
    const RunResult r = run_simulation(cfg, 0);
    REQUIRE(!r.outcomes.empty());

    for (const CustomerOutcome& o : r.outcomes) {
        CHECK(o.status == OutcomeStatus::Served);
        CHECK(o.station == 0);
        CHECK(o.wait_min == 0.0);
        CHECK(o.choice_set_size_at_spawn == 1);
        // soc 0.05 leaves a 6-mile shortfall at the station: 1.875 minutes
        CHECK(o.service_min == doctest::Approx(1.875).epsilon(0.01));
        CHECK(o.payment_usd == doctest::Approx(5.0 * 1.875 / 60.0).epsilon(0.01));
        CHECK(std::abs(o.detour_mi) < 0.02);
    }

    // Travel to the station takes 8 miles at 50 mph = 9.6 minutes.
    std::map<int, const CustomerOutcome*> by_id;
    for (const CustomerOutcome& o : r.outcomes) by_id[o.id] = &o;
    for (const ServiceRecord& rec : r.records) {
        const CustomerOutcome& o = *by_id.at(r.requests[static_cast<std::size_t>(rec.customer)].id);
        CHECK(rec.arrival_min - o.spawn_min == doctest::Approx(9.6).epsilon(0.001));
    }

    REQUIRE(r.series.size() == 1);
    long binned = 0;
    for (const long b : r.series[0].arrivals_per_bin) binned += b;
    CHECK(binned == static_cast<long>(r.records.size()));
    CHECK(r.series[0].samples.back().cum_arrivals == static_cast<long>(r.records.size()));
}

TEST_CASE("congestion produces queueing, reroutes, and balking with legal detours") {
    const ScenarioConfig cfg = congested_cfg();
    const RunResult r = run_simulation(cfg, 0);
    const RunSummary s = summarize(r, cfg);

    CHECK(s.total_requests == static_cast<long>(r.outcomes.size()));
    CHECK(s.served + s.lost == s.total_requests);
    CHECK(s.served > 0);
    CHECK(s.lost > 0);  // two chargers cannot absorb sixty trips an hour
    CHECK(s.avg_wait_min > 0.0);

    for (const CustomerOutcome& o : r.outcomes) {
        if (o.status == OutcomeStatus::Served) {
            CHECK(o.lost_reason == LostReason::None);
            CHECK(o.station >= 0);
            // zone jitter of +-0.001 shifts each leg slightly off the lattice
            const bool legal = std::abs(o.detour_mi) < 0.01 ||
                               std::abs(o.detour_mi - 4.0) < 0.01 ||
                               std::abs(o.detour_mi - 8.0) < 0.01;
            CHECK(legal);
        } else {
            CHECK(o.lost_reason != LostReason::None);
            CHECK(o.lost_reason != LostReason::EmptyChoiceSet);  // both stations reachable
            CHECK(o.payment_usd == 0.0);
        }
    }
    check_fcfs(r, 2);

    // queue-position samples never show an idle charger behind a queue
    for (const StationSeries& series : r.series) {
        for (const MinuteSample& m : series.samples) CHECK(m.queue_len >= 0);
    }
}

TEST_CASE("identical seeds give identical runs; seeds differ, runs differ") {
    const ScenarioConfig cfg = congested_cfg();
    const RunResult a = run_simulation(cfg, 0);
    const RunResult b = run_simulation(cfg, 0);
    CHECK(a.event_hash == b.event_hash);
    CHECK(a.events_processed == b.events_processed);
    REQUIRE(a.outcomes.size() == b.outcomes.size());
    for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
        CHECK(a.outcomes[i].status == b.outcomes[i].status);
        CHECK(a.outcomes[i].wait_min == b.outcomes[i].wait_min);
        CHECK(a.outcomes[i].payment_usd == b.outcomes[i].payment_usd);
    }

    const RunResult c = run_simulation(cfg, 1);  // same seed, next replication
    CHECK(a.event_hash != c.event_hash);
}

TEST_CASE("pricing scheme changes never perturb the demand stream") {
    ScenarioConfig cfg = congested_cfg();
    const RunResult none = run_simulation(cfg, 0);

    cfg.pricing.kind = PriceScheme::Quadratic;
    cfg.pricing.alpha = 0.625;
    const RunResult priced = run_simulation(cfg, 0);

    REQUIRE(none.requests.size() == priced.requests.size());
    for (std::size_t i = 0; i < none.requests.size(); ++i) {
        CHECK(none.requests[i].spawn_min == priced.requests[i].spawn_min);
        CHECK(none.requests[i].origin.x == priced.requests[i].origin.x);
        CHECK(none.requests[i].dest.y == priced.requests[i].dest.y);
        CHECK(none.requests[i].soc == priced.requests[i].soc);
        CHECK(none.requests[i].threshold == priced.requests[i].threshold);
    }
}

TEST_CASE("no stations means every request is lost to an empty choice set") {
    ScenarioConfig cfg = ample_capacity_cfg();
    cfg.stations.clear();
    const RunResult r = run_simulation(cfg, 0);
    REQUIRE(!r.outcomes.empty());
    for (const CustomerOutcome& o : r.outcomes) {
        CHECK(o.status == OutcomeStatus::Lost);
        CHECK(o.lost_reason == LostReason::EmptyChoiceSet);
        CHECK(o.choice_set_size_at_spawn == 0);
    }
    const RunSummary s = summarize(r, cfg);
    CHECK(s.lost == s.total_requests);
    CHECK(s.lost_empty_choice_set == s.total_requests);
    CHECK(s.avg_wait_min == 0.0);
    CHECK(s.by_choice_size_1.customers == s.total_requests);
}

TEST_CASE("welfare identity holds on a nontrivial scenario") {
    GridDemoParams params;
    params.seed = 3;
    params.target_ratio = 0.5;
    params.pricing.kind = PriceScheme::Exponential;
    params.pricing.alpha = 1.4;
    const ScenarioConfig cfg = make_grid_demo(params);
    const RunResult r = run_simulation(cfg, 0);
    const RunSummary s = summarize(r, cfg);
    CHECK(s.total_requests > 0);
    CHECK(std::abs(s.social_welfare_usd - s.social_welfare_payment_free_usd) <= 1e-6);
    check_fcfs(r, static_cast<int>(cfg.stations.size()));
}

TEST_CASE("revenue in outcomes, records, and station totals all agree") {
    const ScenarioConfig cfg = congested_cfg();
    const RunResult r = run_simulation(cfg, 0);

    double from_outcomes = 0.0;
    for (const CustomerOutcome& o : r.outcomes) from_outcomes += o.payment_usd;
    double from_records = 0.0;
    for (const ServiceRecord& rec : r.records) from_records += rec.payment;
    double from_stations = 0.0;
    for (const double v : r.station_revenue) from_stations += v;

    CHECK(from_outcomes == doctest::Approx(from_records).epsilon(1e-12));
    CHECK(from_stations == doctest::Approx(from_records).epsilon(1e-12));
}
