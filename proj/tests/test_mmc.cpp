#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "evsim/mmc.hpp"

using namespace evsim;

namespace {

// Brute-force stationary distribution of the birth-death chain, truncated far
// into the geometric tail. Independent of the closed forms under test.
struct BirthDeath {
    double p_wait = 0.0;
    double lq = 0.0;
};

BirthDeath birth_death(const MmcParams& p, int n_states = 4000) {
    std::vector<double> pi(static_cast<std::size_t>(n_states), 0.0);
    pi[0] = 1.0;
    for (int n = 1; n < n_states; ++n) {
        const double service = p.mu * std::min(n, p.servers);
        pi[static_cast<std::size_t>(n)] = pi[static_cast<std::size_t>(n - 1)] * p.lambda / service;
    }
    double total = 0.0;
    for (const double v : pi) total += v;
    BirthDeath out;
    for (int n = 0; n < n_states; ++n) {
        const double prob = pi[static_cast<std::size_t>(n)] / total;
        if (n >= p.servers) {
            out.p_wait += prob;
            out.lq += (n - p.servers) * prob;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("single server reduces to rho") {
    const MmcParams p{0.5, 1.0, 1};
    CHECK(erlang_c(p) == doctest::Approx(0.5).epsilon(1e-12));
    const MmcMetrics m = mmc_metrics(p);
    CHECK(m.lq == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(m.wq_min == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("two servers, offered load 1.5") {
    const MmcParams p{1.5, 1.0, 2};
    const MmcMetrics m = mmc_metrics(p);
    CHECK(m.p_wait == doctest::Approx(9.0 / 14.0).epsilon(1e-12));
    CHECK(m.lq == doctest::Approx(27.0 / 14.0).epsilon(1e-12));
    CHECK(m.wq_min == doctest::Approx(9.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("closed forms match the brute-force chain") {
    const MmcParams cases[] = {{0.3, 1.0, 1}, {1.5, 1.0, 2}, {3.6, 1.0, 4},
                               {0.9, 0.25, 5}, {7.0, 1.0, 8}};
    for (const MmcParams& p : cases) {
        const MmcMetrics m = mmc_metrics(p);
        const BirthDeath bd = birth_death(p);
        CHECK(m.p_wait == doctest::Approx(bd.p_wait).epsilon(1e-9));
        CHECK(m.lq == doctest::Approx(bd.lq).epsilon(1e-9));
    }
}

TEST_CASE("light traffic wait probability vanishes") {
    const MmcParams p{0.01, 1.0, 4};
    CHECK(erlang_c(p) < 1e-7);
}

TEST_CASE("lq grows with lambda") {
    double prev = -1.0;
    for (const double lambda : {0.2, 0.6, 1.0, 1.4, 1.8}) {
        const double lq = mmc_metrics(MmcParams{lambda, 1.0, 2}).lq;
        CHECK(lq > prev);
        prev = lq;
    }
}

TEST_CASE("unstable or malformed inputs throw") {
    CHECK_THROWS_AS(erlang_c(MmcParams{2.0, 1.0, 2}), std::domain_error);
    CHECK_THROWS_AS(erlang_c(MmcParams{2.5, 1.0, 2}), std::domain_error);
    CHECK_THROWS_AS(erlang_c(MmcParams{0.0, 1.0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(erlang_c(MmcParams{1.0, 1.0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(simulate_mmc(MmcParams{0.5, 1.0, 1}, 0, 1), std::invalid_argument);
}

TEST_CASE("event-driven run agrees with the closed form") {
    const MmcParams p{0.8, 1.0, 1};
    const MmcSimResult sim = simulate_mmc(p, 60000, 7);
    const MmcMetrics m = mmc_metrics(p);
    CHECK(sim.arrivals == 60000);
    CHECK(sim.lq == doctest::Approx(m.lq).epsilon(0.10));
    CHECK(sim.wq_min == doctest::Approx(m.wq_min).epsilon(0.10));
    CHECK(sim.p_wait == doctest::Approx(m.p_wait).epsilon(0.05));
}

TEST_CASE("event-driven run is deterministic in the seed") {
    const MmcParams p{1.5, 1.0, 2};
    const MmcSimResult a = simulate_mmc(p, 5000, 42);
    const MmcSimResult b = simulate_mmc(p, 5000, 42);
    CHECK(a.lq == b.lq);
    CHECK(a.wq_min == b.wq_min);
    CHECK(a.horizon_min == b.horizon_min);
    const MmcSimResult c = simulate_mmc(p, 5000, 43);
    CHECK(a.lq != c.lq);
}
