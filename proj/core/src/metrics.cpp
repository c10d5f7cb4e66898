#include "evsim/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace evsim {

double demand_supply_ratio(long n_requests, double mean_service_min, long total_chargers,
                           double window_min) {
    if (total_chargers < 1 || window_min <= 0.0) return 0.0;
    return (static_cast<double>(n_requests) * mean_service_min) /
           (static_cast<double>(total_chargers) * window_min);
}

double relative_lost_pct(long lost_adjusted, long lost_baseline, long total_requests) {
    if (total_requests < 1) return 0.0;
    return 100.0 * static_cast<double>(lost_adjusted - lost_baseline) /
           static_cast<double>(total_requests);
}

double avg_wait_min(std::span<const CustomerOutcome> outcomes) {
    double sum = 0.0;
    long n = 0;
    for (const CustomerOutcome& o : outcomes) {
        if (o.status != OutcomeStatus::Served) continue;
        sum += o.wait_min;
        ++n;
    }
    return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

double avg_total_time_min(std::span<const CustomerOutcome> outcomes) {
    double sum = 0.0;
    long n = 0;
    for (const CustomerOutcome& o : outcomes) {
        if (o.status != OutcomeStatus::Served) continue;
        sum += o.wait_min + o.service_min;
        ++n;
    }
    return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

double monetized_utility_usd(const CustomerOutcome& outcome, const ChoiceParams& choice,
                             bool lost_value_rounded) {
    if (!(choice.beta_price < 0.0)) {
        throw std::invalid_argument("monetized_utility: beta_price must be negative");
    }
    if (outcome.status == OutcomeStatus::Lost) {
        if (lost_value_rounded) return -18.5;
        // Utils-to-dollars conversion divides by the price sensitivity; the
        // leave-the-system utility is itself negative, so the dollar value is
        // no_charge_utility / |beta_price|.
        return choice.no_charge_utility / -choice.beta_price;
    }
    const double detour_usd_per_mi = choice.beta_detour / choice.beta_price;
    const double wait_usd_per_min = choice.beta_wait / choice.beta_price;
    return -(outcome.payment_usd + detour_usd_per_mi * outcome.detour_mi +
             wait_usd_per_min * outcome.wait_min);
}

double social_welfare(double total_revenue_usd, double monetized_total_disutility_usd) {
    return total_revenue_usd + monetized_total_disutility_usd;
}

double peak_avg_queue(std::span<const StationSeries> series,
                      std::span<const std::pair<double, double>> windows) {
    double sum = 0.0;
    long n = 0;
    for (const StationSeries& s : series) {
        for (const MinuteSample& m : s.samples) {
            const double t = static_cast<double>(m.minute);
            for (const auto& [a, b] : windows) {
                if (t >= a && t < b) {
                    sum += static_cast<double>(m.queue_len);
                    ++n;
                    break;
                }
            }
        }
    }
    return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

RunSummary summarize(const RunResult& result, const ScenarioConfig& cfg) {
    RunSummary s;
    s.total_requests = static_cast<long>(result.outcomes.size());
    s.mean_service_estimate_min = result.mean_service_estimate_min;

    double wait_sum = 0.0;
    double total_time_sum = 0.0;
    double detour_sum = 0.0;
    double revenue = 0.0;
    double utility_total = 0.0;
    double utility_served = 0.0;
    double welfare_payment_free = 0.0;

    const double detour_usd_per_mi = cfg.choice.beta_detour / cfg.choice.beta_price;
    const double wait_usd_per_min = cfg.choice.beta_wait / cfg.choice.beta_price;

    for (const CustomerOutcome& o : result.outcomes) {
        const double u = monetized_utility_usd(o, cfg.choice, cfg.metrics.lost_value_rounded);
        utility_total += u;
        if (o.status == OutcomeStatus::Served) {
            ++s.served;
            wait_sum += o.wait_min;
            total_time_sum += o.wait_min + o.service_min;
            detour_sum += o.detour_mi;
            revenue += o.payment_usd;
            utility_served += u;
            // Payments cancel against revenue, leaving only real costs.
            welfare_payment_free -=
                detour_usd_per_mi * o.detour_mi + wait_usd_per_min * o.wait_min;
        } else {
            ++s.lost;
            welfare_payment_free += u;
            switch (o.lost_reason) {
                case LostReason::EmptyChoiceSet: ++s.lost_empty_choice_set; break;
                case LostReason::BalkedAtSpawn: ++s.lost_balked_spawn; break;
                case LostReason::BalkedAtArrival: ++s.lost_balked_arrival; break;
                case LostReason::None: break;
            }
        }

        LostBucket& bucket = o.choice_set_size_at_spawn <= 1
                                 ? s.by_choice_size_1
                                 : (o.choice_set_size_at_spawn == 2 ? s.by_choice_size_2
                                                                    : s.by_choice_size_3plus);
        ++bucket.customers;
        if (o.status == OutcomeStatus::Lost) ++bucket.lost;
    }

    for (LostBucket* b : {&s.by_choice_size_1, &s.by_choice_size_2, &s.by_choice_size_3plus}) {
        b->lost_pct = b->customers > 0
                          ? 100.0 * static_cast<double>(b->lost) / static_cast<double>(b->customers)
                          : 0.0;
    }
    s.lost_pct = s.total_requests > 0
                     ? 100.0 * static_cast<double>(s.lost) / static_cast<double>(s.total_requests)
                     : 0.0;

    s.avg_wait_min = s.served > 0 ? wait_sum / static_cast<double>(s.served) : 0.0;
    s.avg_total_time_min = s.served > 0 ? total_time_sum / static_cast<double>(s.served) : 0.0;
    s.avg_detour_mi = s.served > 0 ? detour_sum / static_cast<double>(s.served) : 0.0;

    s.total_revenue_usd = revenue;
    s.monetized_total_disutility_usd = utility_total;
    s.disutility_served_avg_usd =
        s.served > 0 ? -utility_served / static_cast<double>(s.served) : 0.0;
    s.disutility_all_avg_usd =
        s.total_requests > 0 ? -utility_total / static_cast<double>(s.total_requests) : 0.0;

    s.social_welfare_usd = social_welfare(revenue, utility_total);
    s.social_welfare_payment_free_usd = welfare_payment_free;

    long chargers = 0;
    for (const StationSpec& spec : cfg.stations) chargers += spec.chargers;
    s.demand_supply_ratio =
        demand_supply_ratio(s.total_requests, result.mean_service_estimate_min, chargers,
                            cfg.demand.sim_end_min - cfg.demand.sim_start_min);

    s.peak_avg_queue = peak_avg_queue(result.series, cfg.metrics.peak_windows);
    return s;
}

}  // namespace evsim
