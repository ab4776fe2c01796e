#pragma once

#include "rankq/effects.hpp"
#include "rankq/matrix.hpp"
#include "rankq/random.hpp"

#include <cstdint>
#include <span>
#include <string_view>

namespace rankq {

// How tied values within one draw share rank positions.
enum class TiePolicy {
    random,  // uniform random order among tied treatments (deterministic substream)
    average, // rank mass split equally over the tied positions
};

std::string_view to_string(TiePolicy p);
TiePolicy parse_tie_policy(std::string_view s);

// p(i, r): probability that treatment i occupies rank r (0-based, rank 0 = most favorable).
struct RankProbabilityMatrix {
    Matrix p;
    std::size_t n_draws = 0;
    TiePolicy tie_policy = TiePolicy::random;

    std::size_t size() const { return p.rows(); }
    double operator()(std::size_t i, std::size_t r) const { return p(i, r); }
};

struct CumulativeRankMatrix {
    Matrix cp;

    std::size_t size() const { return cp.rows(); }
    double operator()(std::size_t i, std::size_t r) const { return cp(i, r); }
};

// Ranks every row of a canonical (smaller-better) sample matrix. tie_seed keys
// the random tie-breaking stream for TiePolicy::random.
RankProbabilityMatrix rank_probabilities(const Matrix& samples, TiePolicy policy = TiePolicy::random,
                                         std::uint64_t tie_seed = 0);

// Same result as rank_probabilities(draw_samples(model, n, seed), policy, seed)
// without materialising the sample matrix. model must be canonical.
RankProbabilityMatrix simulate_rank_probabilities(const EffectModel& model, std::size_t n_draws,
                                                  std::uint64_t seed,
                                                  TiePolicy policy = TiePolicy::random);

CumulativeRankMatrix cumulative_rank_probabilities(const RankProbabilityMatrix& p);

// Throws ValidationError if p is not a T x T doubly stochastic matrix within tol.
void check_rank_matrix(const RankProbabilityMatrix& p, double tol = 1e-9);

// P(mu_i beats mu_j) under the model's direction. Analytic for normal models;
// row fraction (ties count 1/2) for empirical models.
double beat_probability(const EffectModel& model, TreatmentId i, TreatmentId j);

// Fraction of rows with samples(k, i) < samples(k, j), ties counted 1/2.
double beat_fraction(const Matrix& samples, TreatmentId i, TreatmentId j);

namespace detail {

// Adds one draw's rank assignment into counts (T x T, row-major). order is scratch of size T.
void accumulate_ranks(std::span<const double> values, TiePolicy policy, const CounterStream& ties,
                      std::span<std::size_t> order, std::span<double> counts);

} // namespace detail

} // namespace rankq
