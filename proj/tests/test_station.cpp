#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <map>

#include "evsim/station.hpp"

using namespace evsim;

namespace {

Station make_station(int chargers, PricingScheme scheme, double base = 6.0) {
    return Station(StationSpec{"x", {0, 0}, chargers, base}, scheme, 0);
}

PricingScheme linear_m1() {
    PricingScheme s;
    s.kind = PriceScheme::Linear;
    s.alpha = 1.0;
    s.step_m = 1;
    s.mode = PriceMode::Step;
    return s;
}

}  // namespace

TEST_CASE("two-charger FCFS trace with queue-driven prices") {
    Station st = make_station(2, linear_m1());
    const std::map<int, double> durations = {{0, 30.0}, {1, 30.0}, {2, 30.0}, {3, 30.0}};
    const Station::DurationFn dur = [&](int c) { return durations.at(c); };

    auto r0 = st.arrive(0, 0.0, dur);
    CHECK(r0.immediate);
    CHECK(r0.started->end_min == 30.0);
    auto r1 = st.arrive(1, 1.0, dur);
    CHECK(r1.immediate);
    CHECK(st.current_price() == 6.0);
    CHECK(st.free_chargers() == 0);

    auto r2 = st.arrive(2, 2.0, dur);
    CHECK_FALSE(r2.immediate);
    CHECK(st.queue_length() == 1);
    CHECK(st.current_price() == 7.0);

    auto r3 = st.arrive(3, 3.0, dur);
    CHECK_FALSE(r3.immediate);
    CHECK(st.queue_length() == 2);
    CHECK(st.current_price() == 8.0);
    CHECK(st.work_conserving());

    auto c0 = st.complete_service(0, 30.0, dur);
    CHECK(c0.finished.customer == 0);
    CHECK(c0.finished.payment == doctest::Approx(3.0));  // 30 min at $6/hr
    REQUIRE(c0.next_started.has_value());
    CHECK(c0.next_started->customer == 2);  // FCFS: first in line starts first
    CHECK(c0.next_started->start_min == 30.0);
    CHECK(st.queue_length() == 1);
    CHECK(st.current_price() == 7.0);

    auto c1 = st.complete_service(1, 31.0, dur);
    REQUIRE(c1.next_started.has_value());
    CHECK(c1.next_started->customer == 3);
    CHECK(st.queue_length() == 0);
    CHECK(st.current_price() == 6.0);  // queue drained, back to base

    auto c2 = st.complete_service(2, 60.0, dur);
    CHECK_FALSE(c2.next_started.has_value());
    // locked at the price posted when joining the queue, not at service start
    CHECK(c2.finished.locked_price == 6.0);
    CHECK(c2.finished.service_start_min - c2.finished.arrival_min == doctest::Approx(28.0));

    auto c3 = st.complete_service(3, 61.0, dur);
    CHECK(c3.finished.locked_price == 7.0);
    CHECK(c3.finished.payment == doctest::Approx(3.5));

    CHECK(st.served() == 4);
    CHECK(st.arrivals() == 4);
    CHECK(st.revenue() == doctest::Approx(3.0 + 3.0 + 3.0 + 3.5));
    CHECK(st.work_conserving());
}

TEST_CASE("service starts immediately whenever a charger is free") {
    Station st = make_station(3, PricingScheme{});
    const Station::DurationFn dur = [](int) { return 10.0; };
    for (int c = 0; c < 3; ++c) {
        CHECK(st.arrive(c, static_cast<double>(c), dur).immediate);
    }
    CHECK_FALSE(st.arrive(3, 3.0, dur).immediate);
}

TEST_CASE("completing an unknown customer is a logic error") {
    Station st = make_station(1, PricingScheme{});
    const Station::DurationFn dur = [](int) { return 5.0; };
    st.arrive(0, 0.0, dur);
    CHECK_THROWS_AS(st.complete_service(99, 5.0, dur), std::logic_error);
}

TEST_CASE("records carry consistent timestamps") {
    Station st = make_station(1, PricingScheme{});
    const Station::DurationFn dur = [](int c) { return c == 0 ? 7.0 : 4.0; };
    st.arrive(0, 2.0, dur);
    st.arrive(1, 3.0, dur);
    auto c0 = st.complete_service(0, 9.0, dur);
    auto c1 = st.complete_service(1, 13.0, dur);
    CHECK(c0.finished.arrival_min == 2.0);
    CHECK(c0.finished.service_start_min == 2.0);
    CHECK(c0.finished.service_end_min == 9.0);
    CHECK(c1.finished.arrival_min == 3.0);
    CHECK(c1.finished.service_start_min == 9.0);
    CHECK(c1.finished.service_end_min == 13.0);
}

TEST_CASE("service time composition") {
    const MobilityParams mob;  // 200 mi range, 3.2 mi/min

    SUBCASE("deterministic part only when the extra mean is zero") {
        Rng rng(1, Rng::Stream::Sim);
        // reach 60, shortfall 64 -> 20 minutes
        CHECK(sample_service_time(0.3, 124.0, mob, 0.0, rng) == doctest::Approx(20.0));
    }
    SUBCASE("battery-full cap binds") {
        Rng rng(2, Rng::Stream::Sim);
        // headroom 20 mi caps everything at 6.25 minutes
        for (int i = 0; i < 100; ++i) {
            CHECK(sample_service_time(0.9, 300.0, mob, 10.0, rng) == doctest::Approx(6.25));
        }
    }
    SUBCASE("mean matches the truncated exponential") {
        Rng rng(3, Rng::Stream::Sim);
        // det = 0, cap = 56.25 min: E[min(Exp(10), 56.25)] = 10(1 - e^-5.625)
        const double expected = 10.0 * (1.0 - std::exp(-5.625));
        double sum = 0.0;
        const int n = 50000;
        for (int i = 0; i < n; ++i) sum += sample_service_time(0.1, 20.0, mob, 10.0, rng);
        CHECK(sum / n == doctest::Approx(expected).epsilon(0.02));
        CHECK(sum / n > 0.0);
    }
    SUBCASE("never negative, never above cap plus deterministic") {
        Rng rng(4, Rng::Stream::Sim);
        for (int i = 0; i < 5000; ++i) {
            const double s = sample_service_time(0.5, 150.0, mob, 10.0, rng);
            CHECK(s >= 0.0);
            CHECK(s <= (1.0 - 0.5) * 200.0 / 3.2 + 1e-9);
        }
    }
}
