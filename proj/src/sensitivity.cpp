#include "rankq/sensitivity.hpp"

#include "rankq/error.hpp"
#include "rankq/random.hpp"

#include <algorithm>
#include <cmath>

namespace rankq {

std::string_view to_string(SweepField f) { return f == SweepField::sd ? "sd" : "mean"; }

SweepField parse_sweep_field(std::string_view s) {
    if (s == "sd") return SweepField::sd;
    if (s == "mean") return SweepField::mean;
    throw ValidationError("unknown sweep field '" + std::string(s) + "' (expected sd or mean)");
}

std::vector<double> make_grid(double start, double stop, double step) {
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
        throw ValidationError("grid bounds must be finite");
    if (!(step > 0.0)) throw ValidationError("grid step must be positive");
    if (stop < start) throw ValidationError("grid stop must not be below start");
    std::vector<double> grid;
    const double slack = 1e-9 * step;
    for (std::size_t k = 0;; ++k) {
        const double v = start + static_cast<double>(k) * step;
        if (v > stop + slack) break;
        grid.push_back(v);
    }
    return grid;
}

void validate_sweep_spec(const SweepSpec& spec) {
    validate_model(spec.base);
    if (spec.target >= spec.base.size()) throw ValidationError("unknown sweep target treatment");
    if (spec.grid.empty()) throw ValidationError("sweep grid is empty");
    if (spec.metrics.empty()) throw ValidationError("sweep needs at least one metric");
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        if (!std::isfinite(spec.grid[g])) throw ValidationError("non-finite grid value");
        if (g > 0 && !(spec.grid[g] > spec.grid[g - 1])) throw ValidationError("sweep grid must be strictly increasing");
        if (spec.field == SweepField::sd && !(spec.grid[g] > 0.0))
            throw ValidationError("sd grid values must be positive");
    }
    if (spec.field == SweepField::sd && !spec.base.is_normal())
        throw ValidationError("sd sweeps require a normal model");
    if (spec.mc.n_draws == 0) throw ValidationError("n_draws must be positive");
    for (MetricKind k : spec.metrics) {
        if (k == MetricKind::threshold_probability && !spec.threshold)
            throw ValidationError("threshold_probability sweep needs a threshold");
        if (k == MetricKind::relative_effect && (!spec.reference || *spec.reference >= spec.base.size()))
            throw ValidationError("relative_effect sweep needs a valid reference");
        if (k == MetricKind::p_score && !spec.base.is_normal())
            throw ValidationError("p_score requires a normal model");
    }
}

EffectModel perturb_model(const EffectModel& base, TreatmentId target, SweepField field, double value) {
    EffectModel m = base;
    if (auto* d = std::get_if<MarginalNormalModel>(&m.distribution)) {
        (field == SweepField::sd ? d->sds : d->means).at(target) = value;
    } else if (auto* d = std::get_if<JointNormalModel>(&m.distribution)) {
        if (field == SweepField::mean) {
            d->means.at(target) = value;
        } else {
            // Rescale row and column so correlations are preserved.
            const double f = value / std::sqrt(d->covariance(target, target));
            for (std::size_t j = 0; j < d->means.size(); ++j) {
                d->covariance(target, j) *= f;
                if (j != target) d->covariance(j, target) *= f;
            }
            d->covariance(target, target) = value * value;
        }
    } else {
        if (field == SweepField::sd) throw ValidationError("sd sweeps require a normal model");
        auto& s = std::get<EmpiricalSamplesModel>(m.distribution).samples;
        const double shift = value - model_means(base).at(target);
        for (std::size_t k = 0; k < s.rows(); ++k) s(k, target) += shift;
    }
    return m;
}

std::vector<MetricReport> evaluate_metrics(const EffectModel& model, const std::vector<MetricKind>& metrics,
                                           const McConfig& mc, std::optional<double> threshold,
                                           std::optional<TreatmentId> reference) {
    std::optional<RankSummary> ranks;
    std::vector<MetricReport> out;
    for (MetricKind k : metrics) {
        if (is_rank_based(k) && !ranks) ranks = simulate_rank_summary(model, mc);
        switch (k) {
        case MetricKind::point_estimate: out.push_back(point_estimates(model)); break;
        case MetricKind::relative_effect:
            if (!reference) throw ValidationError("relative_effect needs a reference");
            out.push_back(relative_effect_report(model, *reference));
            break;
        case MetricKind::p_best: out.push_back(ranks->p_best); break;
        case MetricKind::sucra: out.push_back(ranks->sucra); break;
        case MetricKind::mean_rank: out.push_back(ranks->mean_rank); break;
        case MetricKind::median_rank: out.push_back(ranks->median_rank); break;
        case MetricKind::p_score: out.push_back(p_score(model)); break;
        case MetricKind::threshold_probability:
            if (!threshold) throw ValidationError("threshold_probability needs a threshold");
            out.push_back(threshold_probability(model, *threshold));
            break;
        }
    }
    return out;
}

std::uint64_t grid_seed(std::uint64_t base_seed, std::size_t g) { return derive_key(base_seed, g); }

SweepResult sweep_parameter(const SweepSpec& spec) {
    validate_sweep_spec(spec);
    SweepResult result;
    for (const auto& t : spec.base.treatments) result.names.push_back(t.name);
    result.metrics = spec.metrics;
    // Grid points run in order; each Monte Carlo evaluation is parallel internally.
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        McConfig mc = spec.mc;
        mc.seed = grid_seed(spec.mc.seed, g);
        const auto model = perturb_model(spec.base, spec.target, spec.field, spec.grid[g]);
        result.points.push_back({spec.grid[g], evaluate_metrics(model, spec.metrics, mc, spec.threshold, spec.reference)});
    }
    const std::size_t T = result.names.size();
    for (std::size_t i = 0; i < T; ++i)
        for (std::size_t j = i + 1; j < T; ++j) {
            auto found = detect_crossovers(result, {i, j});
            result.crossovers.insert(result.crossovers.end(), found.begin(), found.end());
        }
    return result;
}

namespace {

int oriented_sign(const MetricReport& r, TreatmentId i, TreatmentId j) {
    double d = r.values.at(i) - r.values.at(j);
    if (!r.larger_is_better) d = -d;
    return (d > 0.0) - (d < 0.0);
}

} // namespace

std::vector<Crossover> detect_crossovers(const SweepResult& result, std::pair<TreatmentId, TreatmentId> pair) {
    const auto [i, j] = pair;
    if (i == j || i >= result.names.size() || j >= result.names.size())
        throw ValidationError("unknown treatment pair for crossover detection");
    std::vector<Crossover> out;
    for (std::size_t m = 0; m < result.metrics.size(); ++m) {
        int last_sign = 0;
        double last_value = 0.0;
        for (const auto& point : result.points) {
            const int s = oriented_sign(point.reports.at(m), i, j);
            if (s == 0) continue;
            if (last_sign != 0 && s != last_sign)
                out.push_back({result.metrics[m], i, j, last_value, point.value, false});
            last_sign = s;
            last_value = point.value;
        }
    }
    return out;
}

bool has_analytic_form(MetricKind k) {
    return k == MetricKind::point_estimate || k == MetricKind::relative_effect || k == MetricKind::p_score ||
           k == MetricKind::sucra || k == MetricKind::mean_rank || k == MetricKind::threshold_probability;
}

Crossover refine_crossover(const SweepSpec& spec, const Crossover& c, double tol) {
    if (!has_analytic_form(c.metric) || !spec.base.is_normal()) return c;
    auto sign_at = [&](double x) {
        const auto model = perturb_model(spec.base, spec.target, spec.field, x);
        MetricReport r;
        switch (c.metric) {
        case MetricKind::point_estimate: r = point_estimates(model); break;
        case MetricKind::relative_effect: r = relative_effect_report(model, spec.reference.value_or(0)); break;
        case MetricKind::threshold_probability: r = threshold_probability(model, spec.threshold.value_or(0.0)); break;
        default:
            // SUCRA equals the P-score under normality and mean rank is affine in it.
            r = p_score(model);
            break;
        }
        return oriented_sign(r, c.first, c.second);
    };
    double lo = c.lo, hi = c.hi;
    const int s_lo = sign_at(lo);
    const int s_hi = sign_at(hi);
    // MC noise may have produced the flip; keep the interval when the analytic form disagrees.
    if (s_lo == 0 || s_hi == 0 || s_lo == s_hi) return c;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const int s = sign_at(mid);
        if (s == 0) {
            lo = hi = mid;
            break;
        }
        (s == s_lo ? lo : hi) = mid;
    }
    Crossover out = c;
    out.lo = lo;
    out.hi = hi;
    out.refined = true;
    return out;
}

} // namespace rankq
