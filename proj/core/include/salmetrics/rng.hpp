#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace salmetrics {

// Seed derivation and sampling helpers. The engine is std::mt19937_64, whose
// output stream the standard fully specifies; the distributions are
// hand-rolled because the std::*_distribution adapters are
// implementation-defined and would break byte-identical reruns across
// standard libraries. Every randomized routine in the library takes an
// explicit seed and derives substreams via mix_seed, so results never depend
// on call order or thread schedule.

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);
std::uint64_t hash_string(std::string_view s);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n), rejection-sampled so every value is
    // equally likely.
    int uniform_int(int n);

    // Standard normal via polar Box-Muller; caches the second deviate.
    double normal();

private:
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace salmetrics
