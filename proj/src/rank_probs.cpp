#include "rankq/rank_probs.hpp"

#include "rankq/error.hpp"
#include "rankq/random.hpp"
#include "rankq/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace rankq {

std::string_view to_string(TiePolicy p) { return p == TiePolicy::random ? "random" : "average"; }

TiePolicy parse_tie_policy(std::string_view s) {
    if (s == "random") return TiePolicy::random;
    if (s == "average") return TiePolicy::average;
    throw ValidationError("unknown tie policy '" + std::string(s) + "' (expected random or average)");
}

namespace detail {

void accumulate_ranks(std::span<const double> values, TiePolicy policy, const CounterStream& ties,
                      std::span<std::size_t> order, std::span<double> counts) {
    const std::size_t T = values.size();
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Insertion sort: T is small and this keeps the result stable.
    for (std::size_t a = 1; a < T; ++a) {
        const std::size_t idx = order[a];
        const double v = values[idx];
        std::size_t b = a;
        for (; b > 0 && values[order[b - 1]] > v; --b) order[b] = order[b - 1];
        order[b] = idx;
    }

    std::uint64_t tie_counter = 0;
    for (std::size_t start = 0; start < T;) {
        std::size_t end = start + 1;
        while (end < T && values[order[end]] == values[order[start]]) ++end;
        const std::size_t group = end - start;
        if (group == 1) {
            counts[order[start] * T + start] += 1.0;
        } else if (policy == TiePolicy::random) {
            // Fisher-Yates over the tied block.
            for (std::size_t m = group - 1; m > 0; --m) {
                const auto pick = static_cast<std::size_t>(ties.below(tie_counter++, m + 1));
                std::swap(order[start + m], order[start + pick]);
            }
            for (std::size_t r = start; r < end; ++r) counts[order[r] * T + r] += 1.0;
        } else {
            const double share = 1.0 / static_cast<double>(group);
            for (std::size_t a = start; a < end; ++a)
                for (std::size_t r = start; r < end; ++r) counts[order[a] * T + r] += share;
        }
        start = end;
    }
}

} // namespace detail

namespace {

constexpr std::size_t kBlock = 8192;

RankProbabilityMatrix finish(std::vector<double> counts, std::size_t T, std::size_t n, TiePolicy policy) {
    RankProbabilityMatrix out;
    out.p = Matrix(T, T);
    out.n_draws = n;
    out.tie_policy = policy;
    for (std::size_t i = 0; i < T; ++i)
        for (std::size_t r = 0; r < T; ++r) out.p(i, r) = counts[i * T + r] / static_cast<double>(n);
    return out;
}

// Draws are split into fixed blocks independent of the thread count; block
// partial sums are reduced in block order so the result never depends on scheduling.
template <class RowFn>
RankProbabilityMatrix blocked_ranks(std::size_t n, std::size_t T, TiePolicy policy, std::uint64_t tie_seed,
                                    RowFn&& fill_row) {
    const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
    std::vector<double> partial(n_blocks * T * T, 0.0);
    const auto nb = static_cast<std::int64_t>(n_blocks);
#pragma omp parallel
    {
        std::vector<double> values(T);
        std::vector<std::size_t> order(T);
#pragma omp for schedule(static)
        for (std::int64_t b = 0; b < nb; ++b) {
            std::span<double> counts(partial.data() + static_cast<std::size_t>(b) * T * T, T * T);
            const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
            const std::size_t hi = std::min(n, lo + kBlock);
            for (std::size_t k = lo; k < hi; ++k) {
                fill_row(k, std::span<double>(values));
                detail::accumulate_ranks(values, policy, draw_stream(tie_seed, StreamDomain::ties, k), order,
                                         counts);
            }
        }
    }
    std::vector<double> counts(T * T, 0.0);
    for (std::size_t b = 0; b < n_blocks; ++b)
        for (std::size_t c = 0; c < T * T; ++c) counts[c] += partial[b * T * T + c];
    return finish(std::move(counts), T, n, policy);
}

} // namespace

RankProbabilityMatrix rank_probabilities(const Matrix& samples, TiePolicy policy, std::uint64_t tie_seed) {
    if (samples.rows() == 0 || samples.cols() == 0) throw ValidationError("empty sample matrix");
    return blocked_ranks(samples.rows(), samples.cols(), policy, tie_seed,
                         [&](std::size_t k, std::span<double> out) {
                             const auto row = samples.row(k);
                             std::copy(row.begin(), row.end(), out.begin());
                         });
}

RankProbabilityMatrix simulate_rank_probabilities(const EffectModel& model, std::size_t n_draws,
                                                  std::uint64_t seed, TiePolicy policy) {
    if (n_draws == 0) throw ValidationError("n_draws must be positive");
    if (model.direction != OutcomeDirection::smaller_better)
        throw ValidationError("rank simulation expects a canonical (smaller_better) model");
    const Sampler sampler(model, seed);
    return blocked_ranks(n_draws, model.size(), policy, seed,
                         [&](std::size_t k, std::span<double> out) { sampler.draw(k, out); });
}

CumulativeRankMatrix cumulative_rank_probabilities(const RankProbabilityMatrix& p) {
    const std::size_t T = p.size();
    CumulativeRankMatrix out{Matrix(T, T)};
    for (std::size_t i = 0; i < T; ++i) {
        double acc = 0.0;
        for (std::size_t r = 0; r < T; ++r) {
            acc += p(i, r);
            out.cp(i, r) = acc;
        }
    }
    return out;
}

void check_rank_matrix(const RankProbabilityMatrix& p, double tol) {
    const std::size_t T = p.p.rows();
    if (T == 0 || p.p.cols() != T) throw ValidationError("rank probability matrix must be square and non-empty");
    for (std::size_t i = 0; i < T; ++i) {
        double row = 0.0, col = 0.0;
        for (std::size_t r = 0; r < T; ++r) {
            const double v = p(i, r);
            if (!(v >= -tol && v <= 1.0 + tol)) throw ValidationError("rank probability outside [0,1]");
            row += v;
            col += p(r, i);
        }
        if (std::abs(row - 1.0) > tol) throw ValidationError("rank probability row does not sum to 1");
        if (std::abs(col - 1.0) > tol) throw ValidationError("rank probability column does not sum to 1");
    }
}

double beat_fraction(const Matrix& samples, TreatmentId i, TreatmentId j) {
    if (samples.rows() == 0) throw ValidationError("empty sample matrix");
    double wins = 0.0;
    for (std::size_t k = 0; k < samples.rows(); ++k) {
        const double a = samples(k, i), b = samples(k, j);
        wins += a < b ? 1.0 : (a == b ? 0.5 : 0.0);
    }
    return wins / static_cast<double>(samples.rows());
}

double beat_probability(const EffectModel& model, TreatmentId i, TreatmentId j) {
    if (i == j) throw ValidationError("beat probability needs two distinct treatments");
    if (i >= model.size() || j >= model.size()) throw ValidationError("treatment id out of range");
    const bool flip = model.direction == OutcomeDirection::larger_better;
    if (const auto* e = std::get_if<EmpiricalSamplesModel>(&model.distribution))
        return flip ? beat_fraction(e->samples, j, i) : beat_fraction(e->samples, i, j);

    const auto means = model_means(model);
    double gap = means[j] - means[i];
    if (flip) gap = -gap;
    const double se = pair_standard_error(model, i, j);
    if (se == 0.0) return gap > 0.0 ? 1.0 : (gap == 0.0 ? 0.5 : 0.0);
    // Evaluate the lower tail and complement it, so P(i beats j) + P(j beats i) == 1 exactly.
    const double tail = normal_cdf(-std::abs(gap) / se);
    return gap > 0.0 ? 1.0 - tail : tail;
}

} // namespace rankq
