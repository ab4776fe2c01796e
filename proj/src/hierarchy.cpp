#include "rankq/hierarchy.hpp"

#include "rankq/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace rankq {

namespace {

struct QuestionInfo {
    QuestionKind kind;
    std::string_view name;
    MetricKind metric;
};

constexpr QuestionInfo kQuestions[] = {
    {QuestionKind::smallest_estimated_mean, "smallest_estimated_mean", MetricKind::point_estimate},
    {QuestionKind::largest_mean_advantage_vs_reference, "largest_mean_advantage_vs_reference",
     MetricKind::relative_effect},
    {QuestionKind::most_likely_best_value, "most_likely_best_value", MetricKind::p_best},
    {QuestionKind::largest_fraction_beaten, "largest_fraction_beaten", MetricKind::sucra},
    {QuestionKind::largest_mean_rank_position, "largest_mean_rank_position", MetricKind::mean_rank},
    {QuestionKind::largest_median_rank_position, "largest_median_rank_position", MetricKind::median_rank},
    {QuestionKind::maximize_threshold_probability, "maximize_threshold_probability",
     MetricKind::threshold_probability},
};

const QuestionInfo& info(QuestionKind k) {
    for (const auto& q : kQuestions)
        if (q.kind == k) return q;
    throw ValidationError("unknown question kind");
}

} // namespace

std::string_view to_string(QuestionKind k) { return info(k).name; }

QuestionKind parse_question_kind(std::string_view s) {
    for (const auto& q : kQuestions)
        if (q.name == s) return q.kind;
    std::string known;
    for (const auto& q : kQuestions) known += (known.empty() ? "" : ", ") + std::string(q.name);
    throw ValidationError("unknown question kind '" + std::string(s) + "' (known: " + known + ")");
}

MetricKind metric_for(QuestionKind k) { return info(k).metric; }

std::string HierarchyQuestion::text(const EffectModel& model) const {
    const bool smaller = model.direction == OutcomeDirection::smaller_better;
    std::ostringstream os;
    os.imbue(std::locale::classic());
    switch (kind) {
    case QuestionKind::smallest_estimated_mean:
        os << "which treatment has the most favourable (" << (smaller ? "smallest" : "largest")
           << ") estimated mean outcome?";
        break;
    case QuestionKind::largest_mean_advantage_vs_reference:
        os << "which treatment has the largest estimated mean advantage over "
           << (reference ? model.name_of(*reference) : std::string("the reference")) << "?";
        break;
    case QuestionKind::most_likely_best_value:
        os << "which treatment is most likely to have the most favourable true mean outcome?";
        break;
    case QuestionKind::largest_fraction_beaten:
        os << "which treatment beats the largest fraction of its competitors?";
        break;
    case QuestionKind::largest_mean_rank_position:
        os << "which treatment has the most favourable mean rank?";
        break;
    case QuestionKind::largest_median_rank_position:
        os << "which treatment has the most favourable median rank?";
        break;
    case QuestionKind::maximize_threshold_probability: {
        const auto s = side.value_or(smaller ? ThresholdSide::below : ThresholdSide::above);
        os << "which treatment maximises P(mu " << (s == ThresholdSide::below ? "<" : ">") << " "
           << threshold.value_or(0.0) << ")?";
        break;
    }
    }
    return os.str();
}

std::string HierarchyResult::preferable_label() const {
    std::string q = question.empty() ? std::string(to_string(report.kind)) : question;
    return "preferable treatment under \"" + q + "\": " + names.at(preferable());
}

std::vector<std::string> treatment_names(const EffectModel& model) {
    std::vector<std::string> out;
    for (const auto& t : model.treatments) out.push_back(t.name);
    return out;
}

HierarchyResult rank_treatments(const MetricReport& report, const std::vector<std::string>& names,
                                double tie_tolerance) {
    if (!(tie_tolerance >= 0.0)) throw ValidationError("tie tolerance must be non-negative");
    if (report.values.size() != names.size()) throw ValidationError("report and treatment list sizes differ");
    if (report.values.empty()) throw ValidationError("empty metric report");

    const auto& v = report.values;
    const double sign = report.larger_is_better ? -1.0 : 1.0;
    std::vector<TreatmentId> idx(v.size());
    std::iota(idx.begin(), idx.end(), TreatmentId{0});
    std::stable_sort(idx.begin(), idx.end(), [&](TreatmentId a, TreatmentId b) { return sign * v[a] < sign * v[b]; });

    HierarchyResult out;
    out.report = report;
    out.names = names;
    out.tolerance = tie_tolerance;
    std::vector<TreatmentId> group{idx.front()};
    auto flush = [&] {
        std::sort(group.begin(), group.end(), [&](TreatmentId a, TreatmentId b) { return names[a] < names[b]; });
        out.order.insert(out.order.end(), group.begin(), group.end());
        out.tie_groups.push_back(group);
        group.clear();
    };
    for (std::size_t k = 1; k < idx.size(); ++k) {
        if (std::abs(v[idx[k]] - v[idx[k - 1]]) > tie_tolerance) flush();
        group.push_back(idx[k]);
    }
    flush();
    return out;
}

HierarchyResult answer_hierarchy_question(const EffectModel& model, const HierarchyQuestion& question,
                                          const McConfig& mc, double tie_tolerance) {
    validate_model(model);
    MetricReport report;
    switch (metric_for(question.kind)) {
    case MetricKind::point_estimate:
        report = point_estimates(model);
        break;
    case MetricKind::relative_effect:
        if (!question.reference || *question.reference >= model.size())
            throw ValidationError("question needs a valid reference treatment");
        report = relative_effect_report(model, *question.reference);
        break;
    case MetricKind::threshold_probability:
        if (!question.threshold || !std::isfinite(*question.threshold))
            throw ValidationError("question needs a finite threshold");
        report = threshold_probability(model, *question.threshold, question.side);
        break;
    case MetricKind::p_best:
        report = simulate_rank_summary(model, mc).p_best;
        break;
    case MetricKind::sucra:
        report = simulate_rank_summary(model, mc).sucra;
        break;
    case MetricKind::mean_rank:
        report = simulate_rank_summary(model, mc).mean_rank;
        break;
    case MetricKind::median_rank:
        report = simulate_rank_summary(model, mc).median_rank;
        break;
    case MetricKind::p_score:
        report = p_score(model);
        break;
    }
    auto result = rank_treatments(report, treatment_names(model), tie_tolerance);
    result.question = question.text(model);
    return result;
}

HierarchyAgreement hierarchy_agreement(const HierarchyResult& a, const HierarchyResult& b) {
    auto sorted = [](std::vector<std::string> n) {
        std::sort(n.begin(), n.end());
        return n;
    };
    if (a.names.size() != b.names.size() || sorted(a.names) != sorted(b.names))
        throw ValidationError("hierarchies cover different treatment sets");

    const std::size_t T = a.names.size();
    // Group position per treatment name in each hierarchy.
    auto positions = [](const HierarchyResult& h) {
        std::vector<std::pair<std::string, std::size_t>> pos;
        for (std::size_t g = 0; g < h.tie_groups.size(); ++g)
            for (TreatmentId t : h.tie_groups[g]) pos.emplace_back(h.names[t], g);
        std::sort(pos.begin(), pos.end());
        return pos;
    };
    const auto pa = positions(a), pb = positions(b);
    std::size_t pairs = 0, concordant = 0;
    for (std::size_t i = 0; i < T; ++i)
        for (std::size_t j = i + 1; j < T; ++j) {
            const auto rel = [](std::size_t x, std::size_t y) { return (x > y) - (x < y); };
            ++pairs;
            concordant += rel(pa[i].second, pa[j].second) == rel(pb[i].second, pb[j].second);
        }
    HierarchyAgreement out;
    out.concordant_fraction = pairs == 0 ? 1.0 : static_cast<double>(concordant) / static_cast<double>(pairs);
    out.exact_match = concordant == pairs;
    return out;
}

} // namespace rankq
