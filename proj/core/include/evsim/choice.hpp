#pragma once

#include <span>
#include <vector>

#include "evsim/geometry.hpp"
#include "evsim/mobility.hpp"
#include "evsim/rng.hpp"
#include "evsim/station.hpp"

namespace evsim {

struct ChoiceParams {
    double beta_price = -2.7;   // utils per dollar
    double beta_detour = -3.2;  // utils per detour mile
    double beta_wait = -1.0;    // utils per waiting minute
    double no_charge_utility = -50.0;

    // What the price attribute measures: the expected payment for the whole
    // session, or the raw posted hourly rate.
    enum class PriceTerm { Payment, HourlyRate };
    PriceTerm price_term_mode = PriceTerm::Payment;
};

inline constexpr int kNoCharge = -1;

// One row of a choice situation. station == kNoCharge is the leave-the-system
// option; its utility is the fixed no_charge_utility.
struct Alternative {
    int station = kNoCharge;  // index into the scenario station list
    double price_term = 0.0;  // dollars, per ChoiceParams::PriceTerm
    double detour_mi = 0.0;
    double wait_min = 0.0;
};

// Stations reachable on the current charge whose detour stays within the
// willingness-to-detour bound. Returns indices into `stations`, in input order.
std::vector<int> build_choice_set(const Point& position, const Point& dest, double soc,
                                  std::span<const StationSpec> stations,
                                  const MobilityParams& mobility);

double utility(const Alternative& alt, const ChoiceParams& params);

// Multinomial logit probabilities, max-shifted before exponentiation so very
// negative utilities cannot underflow the normalizer.
std::vector<double> mnl_probabilities(std::span<const Alternative> alts,
                                      const ChoiceParams& params);

// Inverse-CDF draw over mnl_probabilities in listed order; returns an index
// into `alts`.
int sample_choice(std::span<const Alternative> alts, const ChoiceParams& params, Rng& rng);

// Queueing delay quoted to choosers: zero when a charger is free, otherwise
// queue_len * mean_service / chargers.
double expected_wait(int free_chargers, long queue_len, int chargers, double mean_service_min);

}  // namespace evsim
