#include <doctest.h>

#include "evsim/geometry.hpp"
#include "evsim/mobility.hpp"
#include "evsim/rng.hpp"

using namespace evsim;

TEST_CASE("manhattan distance") {
    CHECK(manhattan_distance({0, 0}, {0, 0}) == 0.0);
    CHECK(manhattan_distance({0, 0}, {3, 4}) == 7.0);
    CHECK(manhattan_distance({-1, 2}, {2, -2}) == 7.0);
    CHECK(manhattan_distance({1.5, 2.5}, {1.5, 2.5}) == 0.0);
}

TEST_CASE("detour distance hand cases") {
    // Station on a shortest rectilinear path costs nothing.
    CHECK(detour_distance({0, 0}, {10, 0}, {5, 0}) == 0.0);
    CHECK(detour_distance({0, 0}, {10, 10}, {3, 7}) == 0.0);
    // Off-path station: 2 * perpendicular offset.
    CHECK(detour_distance({0, 0}, {10, 0}, {5, 3}) == 6.0);
    CHECK(detour_distance({0, 0}, {0, 0}, {2, 2}) == 8.0);
}

TEST_CASE("detour is nonnegative and symmetric in endpoints") {
    Rng rng(99, Rng::Stream::Scenario);
    for (int i = 0; i < 2000; ++i) {
        const Point a{rng.uniform(-50, 50), rng.uniform(-50, 50)};
        const Point b{rng.uniform(-50, 50), rng.uniform(-50, 50)};
        const Point s{rng.uniform(-50, 50), rng.uniform(-50, 50)};
        const double d = detour_distance(a, b, s);
        CHECK(d >= -1e-12);
        CHECK(detour_distance(b, a, s) == doctest::Approx(d).epsilon(1e-12));
    }
}

TEST_CASE("travel time and soc bookkeeping") {
    const MobilityParams p;  // 50 mph, 200 mi range, 3.2 mi/min charge
    CHECK(travel_time_min(8.0, p) == doctest::Approx(9.6));
    CHECK(travel_time_min(50.0, p) == doctest::Approx(60.0));
    CHECK(reachable_miles(0.5, p) == doctest::Approx(100.0));
    CHECK(soc_consumed(50.0, p) == doctest::Approx(0.25));
}

TEST_CASE("deterministic charge minutes") {
    const MobilityParams p;

    SUBCASE("no shortfall means no mandatory charge") {
        CHECK(deterministic_charge_minutes(0.5, 80.0, p) == 0.0);
        CHECK(deterministic_charge_minutes(1.0, 200.0, p) == 0.0);
    }
    SUBCASE("shortfall divided by the charge rate") {
        // reach = 0.3 * 200 = 60, shortfall 64 -> 20 minutes at 3.2 mi/min
        CHECK(deterministic_charge_minutes(0.3, 124.0, p) == doctest::Approx(20.0));
    }
    SUBCASE("capped at a full battery") {
        // headroom = 0.9 * 200 = 180 < shortfall 320
        CHECK(deterministic_charge_minutes(0.1, 360.0, p) == doctest::Approx(180.0 / 3.2));
    }
}
