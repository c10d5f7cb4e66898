#include "evsim/choice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evsim {

std::vector<int> build_choice_set(const Point& position, const Point& dest, double soc,
                                  std::span<const StationSpec> stations,
                                  const MobilityParams& mobility) {
    std::vector<int> out;
    const double reach = reachable_miles(soc, mobility);
    for (std::size_t i = 0; i < stations.size(); ++i) {
        const Point& loc = stations[i].location;
        if (manhattan_distance(position, loc) <= reach &&
            detour_distance(position, dest, loc) <= mobility.detour_max_mi) {
            out.push_back(static_cast<int>(i));
        }
    }
    return out;
}

double utility(const Alternative& alt, const ChoiceParams& params) {
    if (alt.station == kNoCharge) return params.no_charge_utility;
    return params.beta_price * alt.price_term + params.beta_detour * alt.detour_mi +
           params.beta_wait * alt.wait_min;
}

std::vector<double> mnl_probabilities(std::span<const Alternative> alts,
                                      const ChoiceParams& params) {
    if (alts.empty()) throw std::invalid_argument("mnl_probabilities: empty alternative set");
    std::vector<double> p(alts.size());
    for (std::size_t i = 0; i < alts.size(); ++i) p[i] = utility(alts[i], params);
    const double shift = *std::max_element(p.begin(), p.end());
    double total = 0.0;
    for (double& v : p) {
        v = std::exp(v - shift);
        total += v;
    }
    for (double& v : p) v /= total;
    return p;
}

int sample_choice(std::span<const Alternative> alts, const ChoiceParams& params, Rng& rng) {
    const std::vector<double> p = mnl_probabilities(alts, params);
    const double r = rng.uniform();
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        if (r < acc) return static_cast<int>(i);
    }
    // Rounding left acc marginally below 1; the draw belongs to the last row.
    return static_cast<int>(p.size()) - 1;
}

double expected_wait(int free_chargers, long queue_len, int chargers, double mean_service_min) {
    if (chargers < 1) throw std::invalid_argument("expected_wait: chargers must be >= 1");
    if (free_chargers > 0) return 0.0;
    return static_cast<double>(queue_len) * mean_service_min / static_cast<double>(chargers);
}

}  // namespace evsim
