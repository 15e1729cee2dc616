#pragma once

// Self-contained random number generation and hashing. The standard library
// distributions are implementation-defined, so every draw here is spelled out
// explicitly: identical seeds give identical streams on any platform, which
// the augmentation pipeline relies on for reproducible corpora.

#include <cmath>
#include <cstdint>
#include <cstring>
#include <string_view>

namespace stereoseld {

// 64-bit FNV-1a, used for stable per-stem seeds and manifest checksums.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s) { return fnv1a64(s.data(), s.size()); }

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Combines a global seed with a per-clip key (stem hash or index) so that
// clip order and worker scheduling cannot change any draw.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s ^= key * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull;
    return h ^ splitmix64(s);
}

// xoshiro256** seeded through splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // Inclusive integer range.
    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double real_in(double lo, double hi) { return lo + (hi - lo) * real01(); }

    // Standard normal via Box-Muller (polar form avoided to keep the
    // consumption count fixed at two draws per call).
    double normal() {
        const double u1 = real01();
        const double u2 = real01();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace stereoseld
