// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#ifndef TWM_RNG_HPP
#define TWM_RNG_HPP

#include <cstdint>
#include <vector>

namespace twm {

// SplitMix64 generator. Used everywhere randomness is needed so that runs
// are bit-reproducible across platforms and standard library versions
// (std::shuffle / std::uniform_*_distribution make no such promise).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Rejection-sampled to avoid modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return x % n;
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Derives an independent stream for a subtask (fold id, class id, topic K...)
// from a base seed. Plain addition would make adjacent streams overlap.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    Rng mix(base ^ (0xa076'1d64'78bd'642fULL * (stream + 1)));
    return mix.next_u64();
}

} // namespace twm

#endif
