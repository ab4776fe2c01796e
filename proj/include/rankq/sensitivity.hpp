#pragma once

#include "rankq/effects.hpp"
#include "rankq/metrics.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace rankq {

enum class SweepField { sd, mean };

std::string_view to_string(SweepField f);
SweepField parse_sweep_field(std::string_view s);

struct SweepSpec {
    EffectModel base;
    TreatmentId target = 0;
    SweepField field = SweepField::sd;
    std::vector<double> grid;         // strictly increasing
    std::vector<MetricKind> metrics;  // at least one
    McConfig mc;
    std::optional<double> threshold;       // threshold_probability
    std::optional<TreatmentId> reference;  // relative_effect
};

struct SweepPoint {
    double value = 0.0;
    std::vector<MetricReport> reports; // parallel to SweepSpec::metrics
};

struct Crossover {
    MetricKind metric = MetricKind::sucra;
    TreatmentId first = 0;
    TreatmentId second = 0;
    double lo = 0.0; // grid interval containing the order flip
    double hi = 0.0;
    bool refined = false;

    friend bool operator==(const Crossover&, const Crossover&) = default;
};

struct SweepResult {
    std::vector<std::string> names;
    std::vector<MetricKind> metrics;
    std::vector<SweepPoint> points;
    std::vector<Crossover> crossovers; // every pair, every metric
};

// Builds "start:stop:step" style grids: start + k*step for k = 0.. while <= stop.
std::vector<double> make_grid(double start, double stop, double step);

// Throws ValidationError when the spec violates an invariant.
void validate_sweep_spec(const SweepSpec& spec);

// Copy of the base model with the target's field set to value.
EffectModel perturb_model(const EffectModel& base, TreatmentId target, SweepField field, double value);

// Reports for one model, in metric order, with Monte Carlo seed mc.seed.
std::vector<MetricReport> evaluate_metrics(const EffectModel& model, const std::vector<MetricKind>& metrics,
                                           const McConfig& mc, std::optional<double> threshold = std::nullopt,
                                           std::optional<TreatmentId> reference = std::nullopt);

// Seed used at grid index g.
std::uint64_t grid_seed(std::uint64_t base_seed, std::size_t g);

SweepResult sweep_parameter(const SweepSpec& spec);

// Intervals where the orientation-adjusted sign of value_first - value_second flips.
std::vector<Crossover> detect_crossovers(const SweepResult& result, std::pair<TreatmentId, TreatmentId> pair);

// True for metrics with a closed form under normality (bisection is possible).
bool has_analytic_form(MetricKind k);

// Bisects a crossover interval down to width <= tol using the analytic form of
// the metric. Crossovers on metrics without one are returned unchanged.
Crossover refine_crossover(const SweepSpec& spec, const Crossover& c, double tol = 0.01);

} // namespace rankq
