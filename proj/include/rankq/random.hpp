#pragma once

#include <cstdint>

namespace rankq {

// Standard normal CDF via the complementary error function.
double normal_cdf(double x);

// Standard normal quantile; u must lie in (0, 1).
double normal_quantile(double u);

// SplitMix64 output function. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives an independent 64-bit key from a parent key and an index.
constexpr std::uint64_t derive_key(std::uint64_t parent, std::uint64_t index) {
    return mix64(mix64(parent) ^ mix64(index ^ 0x6a09e667f3bcc909ULL));
}

// Counter-based stream: the i-th output is a pure function of (key, i), so a
// stream for draw k can be rebuilt anywhere without shared state.
class CounterStream {
public:
    explicit constexpr CounterStream(std::uint64_t key) : key_(key) {}

    constexpr std::uint64_t at(std::uint64_t i) const {
        return mix64(key_ + 0x9e3779b97f4a7c15ULL * (i + 1));
    }

    // Uniform in the open interval (0, 1) with 53-bit resolution.
    double uniform(std::uint64_t i) const {
        return (static_cast<double>(at(i) >> 11) + 0.5) * 0x1.0p-53;
    }

    double normal(std::uint64_t i) const { return normal_quantile(uniform(i)); }

    // Uniform integer in [0, bound), bound > 0. Lemire's multiply-shift; bias < bound/2^64.
    std::uint64_t below(std::uint64_t i, std::uint64_t bound) const {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(at(i)) * bound) >> 64);
    }

private:
    std::uint64_t key_;
};

// Stream domains keep sampling and tie-breaking randomness disjoint.
enum class StreamDomain : std::uint64_t { sampling = 1, ties = 2, resampling = 3 };

inline CounterStream draw_stream(std::uint64_t seed, StreamDomain domain, std::uint64_t draw) {
    return CounterStream(derive_key(derive_key(seed, static_cast<std::uint64_t>(domain)), draw));
}

} // namespace rankq
