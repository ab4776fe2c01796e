#pragma once

// Single-threaded reference kernels. The OpenMP kernels must agree with
// these bit-for-bit (random tie policy) or to rounding (average policy).

#include "rankq/effects.hpp"
#include "rankq/rank_probs.hpp"

namespace rankq::reference {

Matrix draw_samples(const EffectModel& model, std::size_t n_draws, std::uint64_t seed);

RankProbabilityMatrix rank_probabilities(const Matrix& samples, TiePolicy policy, std::uint64_t tie_seed);

RankProbabilityMatrix simulate_rank_probabilities(const EffectModel& model, std::size_t n_draws,
                                                  std::uint64_t seed, TiePolicy policy);

} // namespace rankq::reference
