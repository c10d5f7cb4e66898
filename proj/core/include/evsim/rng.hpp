#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace evsim {

// Deterministic random stream. Substreams are derived from (seed, stream tag,
// replication), so demand generation and in-simulation sampling advance
// independently: changing the pricing scheme must not perturb the trip stream.
class Rng {
public:
    enum class Stream : std::uint32_t { Demand = 1, Sim = 2, Scenario = 3 };

    Rng(std::uint64_t seed, Stream stream, std::uint32_t replication = 0) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                          static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), replication};
        engine_.seed(seq);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Inclusive integer range.
    int uniform_int(int lo, int hi) {
        if (hi < lo) throw std::invalid_argument("uniform_int: hi must be >= lo");
        const int span = hi - lo + 1;
        return lo + std::min(span - 1, static_cast<int>(uniform() * span));
    }

    double exponential(double mean) {
        if (mean < 0.0) throw std::invalid_argument("exponential: mean must be >= 0");
        return -mean * std::log1p(-uniform());
    }

    // Box-Muller with a fixed two-draw consumption per sample, which keeps the
    // stream position independent of the values drawn.
    double normal(double mean, double sd) {
        double u1 = uniform();
        const double u2 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    // Normal draw conditioned on [lo, hi], by rejection. sd == 0 degenerates to
    // the clamped mean.
    double truncated_normal(double mean, double sd, double lo, double hi) {
        if (sd < 0.0) throw std::invalid_argument("truncated_normal: sd must be >= 0");
        if (!(lo < hi)) throw std::invalid_argument("truncated_normal: lo must be < hi");
        if (sd == 0.0) return std::clamp(mean, lo, hi);
        for (int i = 0; i < 100000; ++i) {
            const double s = normal(mean, sd);
            if (s >= lo && s <= hi) return s;
        }
        // Acceptance region is numerically unreachable (bounds far in one tail).
        return std::clamp(mean, lo, hi);
    }

    std::uint64_t raw() { return engine_(); }

private:
    static constexpr double kPi = 3.14159265358979323846;
    std::mt19937_64 engine_;
};

}  // namespace evsim
