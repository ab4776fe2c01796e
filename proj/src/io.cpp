#include "rankq/io.hpp"

#include "rankq/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rankq::io {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return ss.str();
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + buf;
}

std::string format_number(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

double parse_double(std::string_view s, const std::string& where) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
        throw ValidationError("missing or malformed number in " + where);
    return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= line.size(); ++k)
        if (k == line.size() || line[k] == sep) {
            out.push_back(line.substr(start, k - start));
            start = k + 1;
        }
    return out;
}

std::string trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"'))
        s.remove_suffix(1);
    return std::string(s);
}

double number_field(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj.at(key).is_number()) throw ValidationError("missing or non-numeric '" + std::string(key) + "' in " + where);
    const double v = obj.at(key).get<double>();
    if (!std::isfinite(v)) throw ValidationError("non-finite '" + std::string(key) + "' in " + where);
    return v;
}

} // namespace

Matrix parse_samples_csv(const std::string& text, const std::vector<std::string>& names) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("empty samples file");
    std::vector<std::string> header;
    for (auto f : split(line, ',')) header.push_back(trim(f));
    if (header.size() != names.size()) throw ValidationError("samples header does not match treatment count");
    // Column c of the file feeds treatment column_of[c].
    std::vector<std::size_t> column_of(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        const auto it = std::find(names.begin(), names.end(), header[c]);
        if (it == names.end()) throw ValidationError("samples header names unknown treatment '" + header[c] + "'");
        column_of[c] = static_cast<std::size_t>(it - names.begin());
        for (std::size_t d = 0; d < c; ++d)
            if (header[d] == header[c]) throw ValidationError("duplicate treatment name '" + header[c] + "'");
    }
    std::vector<double> values;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto fields = split(line, ',');
        const std::string where = "samples row " + std::to_string(rows + 1);
        if (fields.size() != header.size()) throw ValidationError("missing cell in " + where);
        std::vector<double> row(names.size());
        for (std::size_t c = 0; c < fields.size(); ++c) row[column_of[c]] = parse_double(fields[c], where);
        values.insert(values.end(), row.begin(), row.end());
        ++rows;
    }
    Matrix m(rows, names.size());
    std::copy(values.begin(), values.end(), m.data().begin());
    return m;
}

InputDocument parse_input(const std::string& text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("input is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("input document must be a JSON object");
    if (doc.contains("schema_version") &&
        (!doc.at("schema_version").is_number_integer() || doc.at("schema_version").get<int>() != kSchemaVersion))
        throw ValidationError("unsupported schema_version (expected " + std::to_string(kSchemaVersion) + ")");

    InputDocument out;
    out.digest = fnv1a_hex(text);
    auto& model = out.model;
    if (!doc.contains("direction") || !doc.at("direction").is_string())
        throw ValidationError("missing 'direction' (smaller_better or larger_better)");
    model.direction = parse_direction(doc.at("direction").get<std::string>());

    if (!doc.contains("treatments") || !doc.at("treatments").is_array())
        throw ValidationError("missing 'treatments' array");
    const auto& ts = doc.at("treatments");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (!ts[i].is_object() || !ts[i].contains("name") || !ts[i].at("name").is_string())
            throw ValidationError("treatment " + std::to_string(i) + " needs a string 'name'");
        names.push_back(ts[i].at("name").get<std::string>());
    }
    model.treatments = make_treatments(names);

    const bool has_cov = doc.contains("covariance");
    const bool has_samples = doc.contains("samples_file");
    if (has_cov && has_samples) throw ValidationError("exactly one distribution form allowed: covariance and samples_file both present");

    if (has_samples) {
        for (const auto& t : ts)
            if (t.contains("mean") || t.contains("sd"))
                throw ValidationError("exactly one distribution form allowed: samples_file with per-treatment mean/sd");
        if (!doc.at("samples_file").is_string()) throw ValidationError("'samples_file' must be a string path");
        std::filesystem::path p = doc.at("samples_file").get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        model.distribution = EmpiricalSamplesModel{parse_samples_csv(read_file(p), names)};
    } else if (has_cov) {
        JointNormalModel jm;
        const auto& c = doc.at("covariance");
        const std::size_t T = names.size();
        if (!c.is_array() || c.size() != T) throw ValidationError("covariance matrix must be T x T");
        jm.covariance = Matrix(T, T);
        for (std::size_t i = 0; i < T; ++i) {
            if (!c[i].is_array() || c[i].size() != T) throw ValidationError("covariance matrix must be T x T");
            for (std::size_t j = 0; j < T; ++j) {
                if (!c[i][j].is_number()) throw ValidationError("non-numeric covariance entry");
                jm.covariance(i, j) = c[i][j].get<double>();
            }
        }
        for (std::size_t i = 0; i < T; ++i) {
            const std::string where = "treatment '" + names[i] + "'";
            jm.means.push_back(number_field(ts[i], "mean", where));
            if (ts[i].contains("sd")) {
                const double sd = number_field(ts[i], "sd", where);
                if (std::abs(sd * sd - jm.covariance(i, i)) > 1e-9 * std::max(1.0, jm.covariance(i, i)))
                    throw ValidationError("sd of " + where + " disagrees with covariance diagonal");
            }
        }
        model.distribution = std::move(jm);
    } else {
        MarginalNormalModel mm;
        for (std::size_t i = 0; i < names.size(); ++i) {
            const std::string where = "treatment '" + names[i] + "'";
            mm.means.push_back(number_field(ts[i], "mean", where));
            mm.sds.push_back(number_field(ts[i], "sd", where));
        }
        model.distribution = std::move(mm);
    }
    validate_model(model);

    if (doc.contains("question")) {
        const auto& q = doc.at("question");
        if (!q.is_object() || !q.contains("kind") || !q.at("kind").is_string())
            throw ValidationError("question block needs a string 'kind'");
        QuestionBlock b;
        b.kind = q.at("kind").get<std::string>();
        if (q.contains("reference")) b.reference = q.at("reference").get<std::string>();
        if (q.contains("threshold")) b.threshold = number_field(q, "threshold", "question block");
        if (q.contains("side")) b.side = q.at("side").get<std::string>();
        (void)resolve_question(b, model);
        out.question = std::move(b);
    }
    return out;
}

InputDocument load_input(const std::filesystem::path& path) {
    const std::string text = read_file(path);
    return parse_input(text, path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

HierarchyQuestion resolve_question(const QuestionBlock& q, const EffectModel& model) {
    HierarchyQuestion out;
    out.kind = parse_question_kind(q.kind);
    if (q.reference) out.reference = model.id_of(*q.reference);
    out.threshold = q.threshold;
    if (q.side) out.side = parse_threshold_side(*q.side);
    if (out.kind == QuestionKind::largest_mean_advantage_vs_reference && !out.reference)
        throw ValidationError("question " + q.kind + " needs a reference treatment");
    if (out.kind == QuestionKind::maximize_threshold_probability && !out.threshold)
        throw ValidationError("question " + q.kind + " needs a threshold");
    return out;
}

HierarchyRecord HierarchyRecord::from(const HierarchyResult& h) {
    HierarchyRecord r;
    r.question = h.question;
    r.metric = h.report.kind;
    for (auto id : h.order) r.order.push_back(h.names[id]);
    for (const auto& g : h.tie_groups) {
        std::vector<std::string> names;
        for (auto id : g) names.push_back(h.names[id]);
        r.tie_groups.push_back(std::move(names));
    }
    r.tolerance = h.tolerance;
    r.preferable = h.names[h.preferable()];
    return r;
}

namespace {

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto r = m.row(i);
        rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    return rows;
}

Matrix matrix_from(const json& j) {
    const std::size_t n = j.size();
    Matrix m(n, n == 0 ? 0 : j[0].size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = j[i][c].get<double>();
    return m;
}

} // namespace

json to_json(const MetricReport& r) {
    json j;
    j["kind"] = std::string(to_string(r.kind));
    j["values"] = r.values;
    j["larger_is_better"] = r.larger_is_better;
    j["method"] = r.provenance.method == Provenance::Method::analytic ? "analytic" : "monte_carlo";
    if (r.provenance.method == Provenance::Method::monte_carlo) {
        j["n_draws"] = r.provenance.n_draws;
        j["seed"] = r.provenance.seed;
    }
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

MetricReport metric_from_json(const json& j) {
    MetricReport r;
    r.kind = parse_metric_kind(j.at("kind").get<std::string>());
    r.values = j.at("values").get<std::vector<double>>();
    r.larger_is_better = j.at("larger_is_better").get<bool>();
    if (j.at("method").get<std::string>() == "monte_carlo")
        r.provenance = Provenance::monte_carlo(j.at("n_draws").get<std::size_t>(), j.at("seed").get<std::uint64_t>());
    r.detail = j.value("detail", std::string());
    return r;
}

json to_json(const OutputDocument& doc) {
    json j;
    j["tool"] = doc.tool;
    j["version"] = doc.version;
    j["schema_version"] = kSchemaVersion;
    j["command"] = doc.command;
    j["input_digest"] = doc.input_digest;
    j["direction"] = doc.direction;
    j["treatments"] = doc.treatments;
    j["provenance"] = {{"n_draws", doc.n_draws}, {"seed", doc.seed}, {"tie_policy", doc.tie_policy}};
    if (doc.rank_probabilities) j["rank_probabilities"] = matrix_json(*doc.rank_probabilities);
    if (doc.cumulative_rank_probabilities)
        j["cumulative_rank_probabilities"] = matrix_json(*doc.cumulative_rank_probabilities);
    j["metrics"] = json::array();
    for (const auto& m : doc.metrics) j["metrics"].push_back(to_json(m));
    j["hierarchies"] = json::array();
    for (const auto& h : doc.hierarchies)
        j["hierarchies"].push_back({{"question", h.question},
                                    {"metric", std::string(to_string(h.metric))},
                                    {"order", h.order},
                                    {"tie_groups", h.tie_groups},
                                    {"tolerance", h.tolerance},
                                    {"preferable", h.preferable}});
    return j;
}

OutputDocument output_from_json(const json& j) {
    OutputDocument d;
    d.tool = j.at("tool").get<std::string>();
    d.version = j.at("version").get<std::string>();
    d.command = j.at("command").get<std::string>();
    d.input_digest = j.at("input_digest").get<std::string>();
    d.direction = j.at("direction").get<std::string>();
    d.treatments = j.at("treatments").get<std::vector<std::string>>();
    const auto& p = j.at("provenance");
    d.n_draws = p.at("n_draws").get<std::size_t>();
    d.seed = p.at("seed").get<std::uint64_t>();
    d.tie_policy = p.at("tie_policy").get<std::string>();
    if (j.contains("rank_probabilities")) d.rank_probabilities = matrix_from(j.at("rank_probabilities"));
    if (j.contains("cumulative_rank_probabilities"))
        d.cumulative_rank_probabilities = matrix_from(j.at("cumulative_rank_probabilities"));
    for (const auto& m : j.at("metrics")) d.metrics.push_back(metric_from_json(m));
    for (const auto& h : j.at("hierarchies")) {
        HierarchyRecord r;
        r.question = h.at("question").get<std::string>();
        r.metric = parse_metric_kind(h.at("metric").get<std::string>());
        r.order = h.at("order").get<std::vector<std::string>>();
        r.tie_groups = h.at("tie_groups").get<std::vector<std::vector<std::string>>>();
        r.tolerance = h.at("tolerance").get<double>();
        r.preferable = h.at("preferable").get<std::string>();
        d.hierarchies.push_back(std::move(r));
    }
    return d;
}

json to_json(const SweepResult& r) {
    json j;
    j["treatments"] = r.names;
    json metrics = json::array();
    for (auto m : r.metrics) metrics.push_back(std::string(to_string(m)));
    j["metrics"] = metrics;
    j["points"] = json::array();
    for (const auto& p : r.points) {
        json reports = json::array();
        for (const auto& rep : p.reports) reports.push_back(to_json(rep));
        j["points"].push_back({{"value", p.value}, {"reports", reports}});
    }
    j["crossovers"] = json::array();
    for (const auto& c : r.crossovers)
        j["crossovers"].push_back({{"metric", std::string(to_string(c.metric))},
                                   {"pair", {r.names[c.first], r.names[c.second]}},
                                   {"interval", {c.lo, c.hi}},
                                   {"refined", c.refined}});
    return j;
}

} // namespace rankq::io
