#include "salmetrics/rng.hpp"

#include <cmath>

namespace salmetrics {

namespace {

// splitmix64 finalizer; full-period 64-bit mixer.
std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix(splitmix(seed) ^ salt);
}

std::uint64_t hash_string(std::string_view s) {
    // FNV-1a.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

int Rng::uniform_int(int n) {
    if (n <= 0) return 0;
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
        r = next_u64();
    } while (r >= limit);
    return static_cast<int>(r % bound);
}

double Rng::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    double u, w, s;
    do {
        u = 2.0 * uniform() - 1.0;
        w = 2.0 * uniform() - 1.0;
        s = u * u + w * w;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = w * f;
    has_cached_ = true;
    return u * f;
}

}  // namespace salmetrics
