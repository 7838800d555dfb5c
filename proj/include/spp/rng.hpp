#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "spp/errors.hpp"

namespace spp {

// Seeded random source with fully specified mappings. std::mt19937_64 has a
// standardized output sequence, but the standard distributions do not, so all
// derived draws (uniform doubles, bounded ints, shuffles) are implemented here
// to keep generated instances bit-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, 1), 53 mantissa bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    // Uniform integer in [0, bound). Lemire's multiply-shift rejection method.
    std::uint64_t bounded(std::uint64_t bound) {
        internal_check(bound > 0, "Rng::bounded: bound must be positive");
        std::uint64_t x = eng_();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (lo < threshold) {
                x = eng_();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        internal_check(lo <= hi, "Rng::uniform_int: empty range");
        return lo + static_cast<int>(bounded(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin(double p = 0.5) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = bounded(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace spp
