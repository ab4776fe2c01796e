#pragma once

#include "rankq/effects.hpp"
#include "rankq/rank_probs.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rankq {

enum class MetricKind {
    point_estimate,
    relative_effect,
    p_best,
    sucra,
    p_score,
    mean_rank,
    median_rank,
    threshold_probability,
};

std::string_view to_string(MetricKind k);
MetricKind parse_metric_kind(std::string_view s);

// True when the metric is computed from Monte Carlo rank probabilities.
bool is_rank_based(MetricKind k);

struct McConfig {
    std::size_t n_draws = 1'000'000;
    std::uint64_t seed = 20200101;
    TiePolicy tie_policy = TiePolicy::random;
};

struct Provenance {
    enum class Method { analytic, monte_carlo } method = Method::analytic;
    std::size_t n_draws = 0;
    std::uint64_t seed = 0;

    static Provenance analytic() { return {}; }
    static Provenance monte_carlo(std::size_t n, std::uint64_t seed) { return {Method::monte_carlo, n, seed}; }

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct MetricReport {
    MetricKind kind = MetricKind::point_estimate;
    std::vector<double> values;
    bool larger_is_better = false;
    Provenance provenance;
    std::string detail; // e.g. "reference=A" or "below 2.5"

    friend bool operator==(const MetricReport&, const MetricReport&) = default;
};

enum class ThresholdSide { below, above };

std::string_view to_string(ThresholdSide s);
ThresholdSide parse_threshold_side(std::string_view s);

// M_i in canonical (smaller-better) orientation.
MetricReport point_estimates(const EffectModel& model);

// D_i,ref in canonical orientation; smaller is preferable.
MetricReport relative_effect_report(const EffectModel& model, TreatmentId reference);

MetricReport p_best(const RankProbabilityMatrix& p, Provenance prov = {});
MetricReport sucra(const CumulativeRankMatrix& cp, Provenance prov = {});
MetricReport mean_rank(const RankProbabilityMatrix& p, Provenance prov = {});
MetricReport median_rank(const RankProbabilityMatrix& p, Provenance prov = {});

// Average analytic beat probability over competitors; normal models only.
MetricReport p_score(const EffectModel& model);

// P(mu_i < c) (side below) or P(mu_i > c) (side above), with c in the model's
// original units. Without an explicit side, the favourable side of the model's direction is used.
MetricReport threshold_probability(const EffectModel& model, double threshold,
                                   std::optional<ThresholdSide> side = std::nullopt);

// Everything derivable from one rank-probability simulation.
struct RankSummary {
    RankProbabilityMatrix p;
    CumulativeRankMatrix cp;
    MetricReport p_best;
    MetricReport sucra;
    MetricReport mean_rank;
    MetricReport median_rank;
};

RankSummary summarize_ranks(RankProbabilityMatrix p, Provenance prov);

// Simulates the canonical form of model and summarises the ranks.
RankSummary simulate_rank_summary(const EffectModel& model, const McConfig& mc);

// Percent value rounded half away from zero to one decimal (0.7519 -> 75.2).
double percent_1dp(double fraction);
double round_1dp(double x);

} // namespace rankq
