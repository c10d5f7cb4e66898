#include "evsim/pricing.hpp"

#include <cmath>
#include <stdexcept>

namespace evsim {

const char* to_string(PriceScheme kind) {
    switch (kind) {
        case PriceScheme::None: return "none";
        case PriceScheme::Linear: return "linear";
        case PriceScheme::Quadratic: return "quadratic";
        case PriceScheme::Exponential: return "exponential";
    }
    return "?";
}

const char* to_string(PriceMode mode) {
    return mode == PriceMode::Step ? "step" : "continuous";
}

double price_for_queue(const PricingScheme& scheme, double base, long queue_len) {
    if (queue_len < 0) throw std::invalid_argument("price_for_queue: queue_len must be >= 0");
    if (scheme.kind == PriceScheme::None) return base;
    if (scheme.step_m < 1) throw std::invalid_argument("price_for_queue: step_m must be >= 1");

    const double q = static_cast<double>(queue_len);
    const double m = static_cast<double>(scheme.step_m);
    const bool step = scheme.mode == PriceMode::Step;

    switch (scheme.kind) {
        case PriceScheme::Linear:
            return base + scheme.alpha * (step ? std::floor(q / m) : q);
        case PriceScheme::Quadratic:
            return base + scheme.alpha * (step ? std::floor(q * q / m) : q * q);
        case PriceScheme::Exponential:
            return base + std::exp(scheme.alpha * (step ? std::floor(q / m) : q)) - 1.0;
        case PriceScheme::None: break;
    }
    return base;
}

PriceState on_queue_change(const PriceState& state, const PricingScheme& scheme, long queue_len) {
    PriceState next = state;
    next.current = price_for_queue(scheme, state.base, queue_len);
    return next;
}

}  // namespace evsim
