#pragma once

#include <cstdint>

namespace aapso {

/// Source of uniform draws consumed by the stochastic operators.
///
/// Every randomized operation in the library draws through this interface,
/// one value at a time and in a documented order, so tests can substitute a
/// scripted tape and replay recorded draws exactly.
class UniformSource {
public:
    virtual ~UniformSource() = default;

    /// One draw, strictly inside (0, 1).
    virtual double uniform01() = 0;

    /// One draw in (lo, hi), consuming exactly one uniform01().
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
};

/// Deterministic draw stream (SplitMix64). Identical seeds produce identical
/// draw sequences on every platform; doubles are built from the top 53 bits
/// as (bits + 0.5) * 2^-53, which never yields exactly 0 or 1.
class RngStream final : public UniformSource {
public:
    explicit RngStream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    double uniform01() override {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

} // namespace aapso
