#include "rankq/metrics.hpp"

#include "rankq/error.hpp"
#include "rankq/random.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace rankq {

namespace {

struct KindName {
    MetricKind kind;
    std::string_view name;
};

constexpr KindName kKindNames[] = {
    {MetricKind::point_estimate, "point_estimate"},
    {MetricKind::relative_effect, "relative_effect"},
    {MetricKind::p_best, "p_best"},
    {MetricKind::sucra, "sucra"},
    {MetricKind::p_score, "p_score"},
    {MetricKind::mean_rank, "mean_rank"},
    {MetricKind::median_rank, "median_rank"},
    {MetricKind::threshold_probability, "threshold_probability"},
};

std::string format_real(double x) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << x;
    return os.str();
}

} // namespace

std::string_view to_string(MetricKind k) {
    for (const auto& kn : kKindNames)
        if (kn.kind == k) return kn.name;
    return "unknown";
}

MetricKind parse_metric_kind(std::string_view s) {
    for (const auto& kn : kKindNames)
        if (kn.name == s) return kn.kind;
    throw ValidationError("unknown metric '" + std::string(s) + "'");
}

bool is_rank_based(MetricKind k) {
    return k == MetricKind::p_best || k == MetricKind::sucra || k == MetricKind::mean_rank ||
           k == MetricKind::median_rank;
}

std::string_view to_string(ThresholdSide s) { return s == ThresholdSide::below ? "below" : "above"; }

ThresholdSide parse_threshold_side(std::string_view s) {
    if (s == "below") return ThresholdSide::below;
    if (s == "above") return ThresholdSide::above;
    throw ValidationError("unknown threshold side '" + std::string(s) + "' (expected below or above)");
}

MetricReport point_estimates(const EffectModel& model) {
    return {MetricKind::point_estimate, model_means(to_canonical_direction(model)), false, Provenance::analytic(), ""};
}

MetricReport relative_effect_report(const EffectModel& model, TreatmentId reference) {
    const auto rel = relative_effects(to_canonical_direction(model), reference);
    return {MetricKind::relative_effect, rel.differences, false, Provenance::analytic(),
            "reference=" + model.name_of(reference)};
}

MetricReport p_best(const RankProbabilityMatrix& p, Provenance prov) {
    MetricReport out{MetricKind::p_best, {}, true, prov, ""};
    for (std::size_t i = 0; i < p.size(); ++i) out.values.push_back(p(i, 0));
    return out;
}

MetricReport sucra(const CumulativeRankMatrix& cp, Provenance prov) {
    const std::size_t T = cp.size();
    MetricReport out{MetricKind::sucra, {}, true, prov, ""};
    for (std::size_t i = 0; i < T; ++i) {
        double acc = 0.0;
        for (std::size_t r = 0; r + 1 < T; ++r) acc += cp(i, r);
        out.values.push_back(acc / static_cast<double>(T - 1));
    }
    return out;
}

MetricReport mean_rank(const RankProbabilityMatrix& p, Provenance prov) {
    const std::size_t T = p.size();
    MetricReport out{MetricKind::mean_rank, {}, false, prov, ""};
    for (std::size_t i = 0; i < T; ++i) {
        double acc = 0.0;
        for (std::size_t r = 0; r < T; ++r) acc += p(i, r) * static_cast<double>(r + 1);
        out.values.push_back(acc);
    }
    return out;
}

MetricReport median_rank(const RankProbabilityMatrix& p, Provenance prov) {
    const std::size_t T = p.size();
    MetricReport out{MetricKind::median_rank, {}, false, prov, ""};
    for (std::size_t i = 0; i < T; ++i) {
        double acc = 0.0;
        std::size_t m = T;
        for (std::size_t r = 0; r < T; ++r) {
            acc += p(i, r);
            if (acc >= 0.5 - 1e-12) {
                m = r + 1;
                break;
            }
        }
        out.values.push_back(static_cast<double>(m));
    }
    return out;
}

MetricReport p_score(const EffectModel& model) {
    if (!model.is_normal())
        throw ValidationError("p_score requires a normal model; use sucra for empirical samples");
    const auto canon = to_canonical_direction(model);
    const auto means = model_means(canon);
    const std::size_t T = means.size();
    MetricReport out{MetricKind::p_score, {}, true, Provenance::analytic(), ""};
    for (std::size_t i = 0; i < T; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < T; ++j)
            if (j != i) acc += beat_probability(canon, i, j);
        out.values.push_back(acc / static_cast<double>(T - 1));
    }
    return out;
}

MetricReport threshold_probability(const EffectModel& model, double threshold, std::optional<ThresholdSide> side) {
    if (!std::isfinite(threshold)) throw ValidationError("threshold must be finite");
    const ThresholdSide s = side.value_or(model.direction == OutcomeDirection::smaller_better ? ThresholdSide::below
                                                                                             : ThresholdSide::above);
    MetricReport out{MetricKind::threshold_probability, {}, true, Provenance::analytic(),
                     std::string(to_string(s)) + " " + format_real(threshold)};
    if (const auto* e = std::get_if<EmpiricalSamplesModel>(&model.distribution)) {
        const auto& x = e->samples;
        for (std::size_t i = 0; i < x.cols(); ++i) {
            std::size_t hits = 0;
            for (std::size_t k = 0; k < x.rows(); ++k)
                hits += s == ThresholdSide::below ? (x(k, i) < threshold) : (x(k, i) > threshold);
            out.values.push_back(static_cast<double>(hits) / static_cast<double>(x.rows()));
        }
        return out;
    }
    // Marginal event: only the marginal variance matters, also for joint models.
    const auto means = model_means(model);
    const auto vars = model_variances(model);
    for (std::size_t i = 0; i < means.size(); ++i) {
        const double z = (threshold - means[i]) / std::sqrt(vars[i]);
        out.values.push_back(s == ThresholdSide::below ? normal_cdf(z) : normal_cdf(-z));
    }
    return out;
}

RankSummary summarize_ranks(RankProbabilityMatrix p, Provenance prov) {
    auto cp = cumulative_rank_probabilities(p);
    auto best = rankq::p_best(p, prov);
    auto s = rankq::sucra(cp, prov);
    auto mean = rankq::mean_rank(p, prov);
    auto median = rankq::median_rank(p, prov);
    return {std::move(p), std::move(cp), std::move(best), std::move(s), std::move(mean), std::move(median)};
}

RankSummary simulate_rank_summary(const EffectModel& model, const McConfig& mc) {
    auto p = simulate_rank_probabilities(to_canonical_direction(model), mc.n_draws, mc.seed, mc.tie_policy);
    return summarize_ranks(std::move(p), Provenance::monte_carlo(mc.n_draws, mc.seed));
}

double round_1dp(double x) { return std::round(x * 10.0) / 10.0; }

double percent_1dp(double fraction) { return std::round(fraction * 1000.0) / 10.0; }

} // namespace rankq
