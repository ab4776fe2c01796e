#pragma once

#include "rankq/effects.hpp"
#include "rankq/metrics.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rankq {

enum class QuestionKind {
    smallest_estimated_mean,
    largest_mean_advantage_vs_reference,
    most_likely_best_value,
    largest_fraction_beaten,
    largest_mean_rank_position,
    largest_median_rank_position,
    maximize_threshold_probability,
};

std::string_view to_string(QuestionKind k);
QuestionKind parse_question_kind(std::string_view s);
MetricKind metric_for(QuestionKind k);

struct HierarchyQuestion {
    QuestionKind kind = QuestionKind::smallest_estimated_mean;
    std::optional<TreatmentId> reference;     // largest_mean_advantage_vs_reference
    std::optional<double> threshold;          // maximize_threshold_probability
    std::optional<ThresholdSide> side;        // defaults to the favourable side

    std::string text(const EffectModel& model) const;

    friend bool operator==(const HierarchyQuestion&, const HierarchyQuestion&) = default;
};

struct HierarchyResult {
    std::string question; // empty when produced directly from a report
    MetricReport report;
    std::vector<std::string> names;              // indexed by treatment id
    std::vector<TreatmentId> order;              // most preferable first
    std::vector<std::vector<TreatmentId>> tie_groups; // in hierarchy order
    double tolerance = 0.0;

    TreatmentId preferable() const { return order.front(); }
    // "preferable treatment under <question>: <name>"
    std::string preferable_label() const;
};

// Orders treatments by the report (respecting its orientation) and groups
// neighbours whose values differ by at most tie_tolerance. Within a group the
// listed order is lexicographic by name.
HierarchyResult rank_treatments(const MetricReport& report, const std::vector<std::string>& names,
                                double tie_tolerance = 0.0);

// Computes the metric the question maps to and ranks the treatments by it.
HierarchyResult answer_hierarchy_question(const EffectModel& model, const HierarchyQuestion& question,
                                          const McConfig& mc = {}, double tie_tolerance = 0.0);

struct HierarchyAgreement {
    bool exact_match = false;
    double concordant_fraction = 0.0; // over unordered pairs; tie vs order is discordant
};

HierarchyAgreement hierarchy_agreement(const HierarchyResult& a, const HierarchyResult& b);

std::vector<std::string> treatment_names(const EffectModel& model);

} // namespace rankq
