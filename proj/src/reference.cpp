#include "rankq/reference.hpp"

#include "rankq/error.hpp"
#include "rankq/random.hpp"
#include "rankq/sampler.hpp"

#include <vector>

namespace rankq::reference {

Matrix draw_samples(const EffectModel& model, std::size_t n_draws, std::uint64_t seed) {
    if (n_draws == 0) throw ValidationError("n_draws must be positive");
    const Sampler sampler(model, seed);
    Matrix out(n_draws, model.size());
    for (std::size_t k = 0; k < n_draws; ++k) sampler.draw(k, out.row(k));
    return out;
}

namespace {

RankProbabilityMatrix normalise(const std::vector<double>& counts, std::size_t T, std::size_t n, TiePolicy policy) {
    RankProbabilityMatrix out{Matrix(T, T), n, policy};
    for (std::size_t i = 0; i < T; ++i)
        for (std::size_t r = 0; r < T; ++r) out.p(i, r) = counts[i * T + r] / static_cast<double>(n);
    return out;
}

} // namespace

RankProbabilityMatrix rank_probabilities(const Matrix& samples, TiePolicy policy, std::uint64_t tie_seed) {
    if (samples.rows() == 0) throw ValidationError("empty sample matrix");
    const std::size_t T = samples.cols();
    std::vector<double> counts(T * T, 0.0);
    std::vector<std::size_t> order(T);
    for (std::size_t k = 0; k < samples.rows(); ++k)
        detail::accumulate_ranks(samples.row(k), policy, draw_stream(tie_seed, StreamDomain::ties, k), order, counts);
    return normalise(counts, T, samples.rows(), policy);
}

RankProbabilityMatrix simulate_rank_probabilities(const EffectModel& model, std::size_t n_draws,
                                                  std::uint64_t seed, TiePolicy policy) {
    return reference::rank_probabilities(reference::draw_samples(model, n_draws, seed), policy, seed);
}

} // namespace rankq::reference
