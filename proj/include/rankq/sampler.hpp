#pragma once

#include "rankq/effects.hpp"

#include <cstdint>
#include <span>

namespace rankq {

// Precomputed per-model state for generating the k-th joint draw.
// Immutable once built; draw() may be called concurrently.
class Sampler {
public:
    Sampler(const EffectModel& model, std::uint64_t seed);

    std::size_t size() const { return means_.size(); }

    // Writes draw k into out (size T).
    void draw(std::uint64_t k, std::span<double> out) const;

private:
    enum class Kind { marginal, joint, empirical };
    Kind kind_;
    std::uint64_t seed_;
    std::vector<double> means_;
    std::vector<double> sds_;
    Matrix factor_;
    const Matrix* samples_ = nullptr;
};

} // namespace rankq
