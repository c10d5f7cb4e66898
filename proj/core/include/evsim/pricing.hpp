#pragma once

namespace evsim {

enum class PriceScheme { None, Linear, Quadratic, Exponential };
enum class PriceMode { Step, Continuous };

struct PricingScheme {
    PriceScheme kind = PriceScheme::None;
    double alpha = 0.0;  // dollars per unit (linear/quadratic) or exponent slope
    int step_m = 3;      // queue-length granularity of step mode
    PriceMode mode = PriceMode::Step;
};

struct PriceState {
    double base = 5.0;     // $/hour floor
    double current = 5.0;  // posted $/hour, never below base
};

const char* to_string(PriceScheme kind);
const char* to_string(PriceMode mode);

// Posted hourly price for a station with `queue_len` customers waiting.
// Pure in its arguments; the step mode discretizes the queue length in
// buckets of `step_m` before applying the adjustment.
double price_for_queue(const PricingScheme& scheme, double base, long queue_len);

// Recompute the posted price after the waiting count changed in either
// direction. Customers already queued keep the price they locked at entry.
PriceState on_queue_change(const PriceState& state, const PricingScheme& scheme, long queue_len);

}  // namespace evsim
