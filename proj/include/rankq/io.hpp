#pragma once

#include "rankq/effects.hpp"
#include "rankq/hierarchy.hpp"
#include "rankq/metrics.hpp"
#include "rankq/sensitivity.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rankq::io {

inline constexpr int kSchemaVersion = 1;

struct QuestionBlock {
    std::string kind;
    std::optional<std::string> reference;
    std::optional<double> threshold;
    std::optional<std::string> side;
};

struct InputDocument {
    EffectModel model;
    std::optional<QuestionBlock> question;
    std::string digest; // FNV-1a of the input bytes
};

// Parses an input document. samples_file paths are resolved against base_dir.
// Throws ValidationError on schema/invariant violations and IoError on unreadable files.
InputDocument parse_input(const std::string& text, const std::filesystem::path& base_dir = ".");
InputDocument load_input(const std::filesystem::path& path);

// CSV with a header row of treatment names and one joint draw per row.
Matrix parse_samples_csv(const std::string& text, const std::vector<std::string>& names);

std::string read_file(const std::filesystem::path& path);
std::string fnv1a_hex(const std::string& bytes);

HierarchyQuestion resolve_question(const QuestionBlock& q, const EffectModel& model);

struct HierarchyRecord {
    std::string question;
    MetricKind metric = MetricKind::point_estimate;
    std::vector<std::string> order;
    std::vector<std::vector<std::string>> tie_groups;
    double tolerance = 0.0;
    std::string preferable;

    static HierarchyRecord from(const HierarchyResult& h);
    friend bool operator==(const HierarchyRecord&, const HierarchyRecord&) = default;
};

struct OutputDocument {
    std::string tool = "rankq";
    std::string version;
    std::string command;
    std::string input_digest;
    std::string direction;
    std::vector<std::string> treatments;
    std::size_t n_draws = 0;
    std::uint64_t seed = 0;
    std::string tie_policy;
    std::optional<Matrix> rank_probabilities;
    std::optional<Matrix> cumulative_rank_probabilities;
    std::vector<MetricReport> metrics;
    std::vector<HierarchyRecord> hierarchies;

    friend bool operator==(const OutputDocument&, const OutputDocument&) = default;
};

nlohmann::json to_json(const OutputDocument& doc);
OutputDocument output_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MetricReport& r);
MetricReport metric_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SweepResult& r);

// Full-precision, locale-independent number formatting (shortest round-trip form).
std::string format_number(double x);

} // namespace rankq::io
