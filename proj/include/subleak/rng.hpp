#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "subleak/error.hpp"

namespace subleak {

// Deterministic RNG used everywhere randomness is needed. std::mt19937_64 has
// a pinned algorithm, but the standard *distributions* do not, so bounded
// draws and shuffles are implemented here by hand. Same seed, same platform,
// same sequence, forever.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform draw in [0, bound) via rejection sampling, no modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        require(bound > 0, "Rng::next_below: bound must be positive");
        if (bound == 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            std::uint64_t v = eng_();
            if (v < limit) return v % bound;
        }
    }

    // Uniform in [lo, hi] inclusive.
    std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
        require(lo <= hi, "Rng::next_in: empty range");
        return lo + static_cast<std::int64_t>(
                        next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    double next_unit() {
        // 53 bits of mantissa, uniform in [0,1).
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Fisher-Yates, back to front.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0, n), order randomized.
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
        require(k <= n, "Rng::sample_indices: k > n");
        std::vector<std::size_t> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = i;
        // Partial Fisher-Yates: after k swaps the prefix is the sample.
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t j = i + static_cast<std::size_t>(next_below(n - i));
            std::swap(all[i], all[j]);
        }
        all.resize(k);
        return all;
    }

private:
    std::mt19937_64 eng_;
};

// splitmix64 finalizer, used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stable sub-seed for a named purpose ("key", "split", ...) under a master
// seed. FNV-1a over the tag, then mixed with the master.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return mix64(master ^ h);
}

} // namespace subleak
