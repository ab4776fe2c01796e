#include "rankq/cli.hpp"

#include "rankq/error.hpp"
#include "rankq/hierarchy.hpp"
#include "rankq/io.hpp"
#include "rankq/presets.hpp"
#include "rankq/sensitivity.hpp"

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace rankq::cli {

namespace {

using nlohmann::json;

struct GlobalOptions {
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 20200101;
    std::string format = "table";
    std::string output;
    std::string tie_policy = "random";
    int threads = 0;
    double tie_tolerance = 0.0;
};

McConfig mc_of(const GlobalOptions& g) {
    if (g.samples == 0) throw ValidationError("--samples must be positive");
    return {g.samples, g.seed, parse_tie_policy(g.tie_policy)};
}

std::ostringstream make_stream() {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    return os;
}

std::string fixed(double x, int digits) {
    auto os = make_stream();
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

// Loads a model from --input or a named built-in model.
io::InputDocument load_model(const std::string& input, const std::string& preset) {
    if (!input.empty() && !preset.empty()) throw ValidationError("use either --input or --preset, not both");
    if (!input.empty()) return io::load_input(input);
    io::InputDocument doc;
    if (preset == "scenario1") doc.model = presets::scenario1();
    else if (preset == "figure3") doc.model = presets::figure3_base();
    else if (preset == "ldl_example") doc.model = presets::ldl_example();
    else if (preset.empty()) throw ValidationError("an --input file (or --preset) is required");
    else throw ValidationError("unknown model preset '" + preset + "' (available: scenario1, figure3, ldl_example)");
    doc.digest = "preset:" + preset;
    return doc;
}

std::string join_order(const HierarchyResult& h) {
    std::string s;
    for (std::size_t g = 0; g < h.tie_groups.size(); ++g) {
        if (g) s += " > ";
        const auto& grp = h.tie_groups[g];
        if (grp.size() > 1) s += "{";
        for (std::size_t k = 0; k < grp.size(); ++k) s += (k ? " " : "") + h.names[grp[k]];
        if (grp.size() > 1) s += "}";
    }
    return s;
}

void print_row(std::ostream& os, const std::string& label, const std::vector<std::string>& cells) {
    os << std::left << std::setw(22) << label << std::right;
    for (const auto& c : cells) os << std::setw(9) << c;
    os << '\n';
}

std::vector<std::string> cells(const std::vector<double>& v, int digits, double scale = 1.0) {
    std::vector<std::string> out;
    for (double x : v) out.push_back(fixed(digits == 1 && scale == 100.0 ? percent_1dp(x) : x * scale, digits));
    return out;
}

struct ComputeOutcome {
    io::OutputDocument doc;
    RankSummary ranks;
    std::vector<HierarchyResult> hierarchies;
    std::vector<double> display_means;
    std::optional<MetricReport> pscore;
};

ComputeOutcome compute(const io::InputDocument& in, const McConfig& mc, double tie_tol) {
    const auto& model = in.model;
    ComputeOutcome r{{}, simulate_rank_summary(model, mc), {}, model_means(model), std::nullopt};
    const auto names = treatment_names(model);

    std::vector<MetricReport> reports = {point_estimates(model), r.ranks.p_best, r.ranks.sucra};
    if (model.is_normal()) {
        r.pscore = p_score(model);
        reports.push_back(*r.pscore);
    }
    reports.push_back(r.ranks.mean_rank);
    reports.push_back(r.ranks.median_rank);
    for (const auto& rep : reports) r.hierarchies.push_back(rank_treatments(rep, names, tie_tol));
    if (in.question)
        r.hierarchies.push_back(answer_hierarchy_question(model, io::resolve_question(*in.question, model), mc, tie_tol));

    auto& d = r.doc;
    d.version = kVersion;
    d.command = "compute";
    d.input_digest = in.digest;
    d.direction = std::string(to_string(model.direction));
    d.treatments = names;
    d.n_draws = mc.n_draws;
    d.seed = mc.seed;
    d.tie_policy = std::string(to_string(mc.tie_policy));
    d.rank_probabilities = r.ranks.p.p;
    d.cumulative_rank_probabilities = r.ranks.cp.cp;
    d.metrics = reports;
    for (const auto& h : r.hierarchies) d.hierarchies.push_back(io::HierarchyRecord::from(h));
    return r;
}

std::string render_compute_table(const ComputeOutcome& r, const EffectModel& model, double seconds) {
    auto os = make_stream();
    const std::size_t T = model.size();
    os << "Ranking metrics (" << to_string(model.direction) << ", " << r.doc.n_draws << " draws, seed "
       << r.doc.seed << ")\n";
    print_row(os, "Ranking metric", r.doc.treatments);
    print_row(os, "Point estimate", cells(r.display_means, 2));
    print_row(os, "p_BV (%)", cells(r.ranks.p_best.values, 1, 100.0));
    for (std::size_t c = 1; c < T; ++c) {
        std::vector<double> col;
        for (std::size_t i = 0; i < T; ++i) col.push_back(r.ranks.cp(i, c));
        print_row(os, "cp_" + std::to_string(c + 1) + " (%)", cells(col, 1, 100.0));
    }
    print_row(os, "SUCRA (%)", cells(r.ranks.sucra.values, 1, 100.0));
    if (r.pscore) print_row(os, "P-score (%)", cells(r.pscore->values, 1, 100.0));
    std::vector<std::string> mean;
    for (double v : r.ranks.mean_rank.values) mean.push_back(fixed(round_1dp(v), 1));
    print_row(os, "Mean rank", mean);
    print_row(os, "Median rank", cells(r.ranks.median_rank.values, 0));
    os << "\nHierarchies\n";
    for (const auto& h : r.hierarchies) {
        os << "  " << std::left << std::setw(22) << to_string(h.report.kind) << std::right << join_order(h) << '\n';
        if (!h.question.empty()) os << "  " << h.preferable_label() << '\n';
    }
    os << "\nwall time: " << fixed(seconds, 2) << " s\n";
    return os.str();
}

std::string render_compute_csv(const ComputeOutcome& r) {
    auto os = make_stream();
    os << "metric,treatment,value\n";
    const auto& names = r.doc.treatments;
    const std::size_t T = names.size();
    for (std::size_t rk = 0; rk < T; ++rk)
        for (std::size_t i = 0; i < T; ++i)
            os << "rank_probability_r" << rk + 1 << ',' << csv_field(names[i]) << ','
               << io::format_number(r.ranks.p(i, rk)) << '\n';
    for (std::size_t rk = 0; rk < T; ++rk)
        for (std::size_t i = 0; i < T; ++i)
            os << "cumulative_rank_probability_r" << rk + 1 << ',' << csv_field(names[i]) << ','
               << io::format_number(r.ranks.cp(i, rk)) << '\n';
    for (const auto& m : r.doc.metrics)
        for (std::size_t i = 0; i < T; ++i)
            os << to_string(m.kind) << ',' << csv_field(names[i]) << ',' << io::format_number(m.values[i]) << '\n';
    return os.str();
}

void check_format(const std::string& f) {
    if (f != "table" && f != "csv" && f != "json")
        throw ValidationError("unknown --format '" + f + "' (expected table, csv or json)");
}

// Sweep grid "start:stop:step"; a bare number is a one-point grid.
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> parts;
    std::size_t start = 0;
    for (std::size_t k = 0; k <= text.size(); ++k)
        if (k == text.size() || text[k] == ':') {
            const std::string piece = text.substr(start, k - start);
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(piece, &used);
            } catch (const std::exception&) {
                throw ValidationError("malformed --grid '" + text + "' (expected start:stop:step)");
            }
            if (used != piece.size()) throw ValidationError("malformed --grid '" + text + "' (expected start:stop:step)");
            parts.push_back(v);
            start = k + 1;
        }
    if (parts.size() == 1) return {parts[0]};
    if (parts.size() != 3) throw ValidationError("malformed --grid '" + text + "' (expected start:stop:step)");
    return make_grid(parts[0], parts[1], parts[2]);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

std::string render_crossovers(const SweepResult& r, const std::vector<Crossover>& xs, const std::string& prefix) {
    auto os = make_stream();
    os << prefix << "crossovers: " << xs.size() << '\n';
    for (const auto& c : xs)
        os << prefix << to_string(c.metric) << " (" << r.names[c.first] << "," << r.names[c.second] << ") in ["
           << io::format_number(c.lo) << ", " << io::format_number(c.hi) << "]" << (c.refined ? " refined" : "")
           << '\n';
    return os.str();
}

struct ReproCell {
    std::string row;
    std::string treatment;
    double computed;
    double published;
    double tolerance;
    bool pass() const { return std::abs(computed - published) <= tolerance + 1e-12; }
};

std::vector<ReproCell> reproduce_table3(const McConfig& mc) {
    const auto model = presets::scenario1();
    const auto ranks = simulate_rank_summary(model, mc);
    const auto ps = p_score(model);
    const auto ref = presets::table3_scenario1_cells();
    std::vector<ReproCell> out;
    for (std::size_t k = 0; k < ref.size(); ++k) {
        const std::size_t row = k / 4, i = k % 4;
        double v = 0.0;
        switch (row) {
        case 0: v = 100.0 * ranks.p_best.values[i]; break;
        case 1: case 2: case 3: v = 100.0 * ranks.cp(i, row); break;
        case 4: v = 100.0 * ranks.sucra.values[i]; break;
        case 5: v = 100.0 * ps.values[i]; break;
        case 6: v = ranks.mean_rank.values[i]; break;
        default: v = ranks.median_rank.values[i]; break;
        }
        out.push_back({ref[k].row, ref[k].treatment, v, ref[k].published, ref[k].tolerance});
    }
    return out;
}

std::vector<ReproCell> reproduce_table4(const McConfig& mc) {
    const auto result = sweep_parameter(presets::table4_sweep(mc));
    const auto ref = presets::table4_cells();
    std::vector<ReproCell> out;
    for (std::size_t k = 0; k < ref.size(); ++k)
        out.push_back({ref[k].row, ref[k].treatment, 100.0 * result.points[k / 4].reports[0].values[k % 4],
                       ref[k].published, ref[k].tolerance});
    return out;
}

std::vector<ReproCell> reproduce_figure3(const McConfig& mc) {
    const auto result = sweep_parameter(presets::figure3_sweep(mc));
    const auto xs = detect_crossovers(result, {3, 1});
    std::vector<ReproCell> out;
    for (const auto& target : presets::figure3_targets()) {
        const MetricKind kind = parse_metric_kind(target.metric);
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& c : xs)
            if (c.metric == kind) {
                lo = std::min(lo, c.lo);
                hi = std::max(hi, c.hi);
            }
        // Report the midpoint of the span covering every detected flip; a
        // missing crossover or a span leaving the window fails the cell.
        ReproCell cell{target.metric + " crossover SD_C (C,A)", "C/A", NAN, target.published, target.tolerance};
        if (lo <= hi) {
            const bool inside = lo >= target.published - target.tolerance && hi <= target.published + target.tolerance;
            cell.computed = inside ? 0.5 * (lo + hi) : (lo < target.published ? lo : hi);
        }
        out.push_back(cell);
    }
    return out;
}

class Runner {
public:
    Runner(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(const std::vector<std::string>& args);

private:
    void emit(const std::string& text) {
        if (g_.output.empty()) {
            out_ << text;
            out_.flush();
            return;
        }
        std::ofstream f(g_.output, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open output '" + g_.output + "'");
        f << text;
        if (!f) throw IoError("error writing output '" + g_.output + "'");
    }

    void apply_threads() const {
#ifdef _OPENMP
        if (g_.threads > 0) omp_set_num_threads(g_.threads);
#endif
    }

    int do_compute();
    int do_question();
    int do_sweep();
    int do_reproduce();

    std::ostream& out_;
    std::ostream& err_;
    GlobalOptions g_;
    std::string input_, preset_;
    std::string kind_, reference_, side_;
    std::optional<double> threshold_;
    std::string target_, field_, grid_, metrics_, pair_;
    bool refine_ = false;
    std::string reproduce_name_;
};

int Runner::run(const std::vector<std::string>& args) {
    CLI::App app{"rankq: treatment hierarchy metrics, questions and precision sweeps", "rankq"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--samples", g_.samples, "Monte Carlo draws")->capture_default_str();
    app.add_option("--seed", g_.seed, "Base seed (u64)")->capture_default_str();
    app.add_option("--format", g_.format, "table | csv | json")->capture_default_str();
    app.add_option("--output", g_.output, "Write primary output to this path");
    app.add_option("--tie-policy", g_.tie_policy, "random | average")->capture_default_str();
    app.add_option("--threads", g_.threads, "OpenMP worker count (0 = runtime default)");
    app.add_option("--tie-tolerance", g_.tie_tolerance, "Group treatments whose metric values differ by at most this");

    auto* compute = app.add_subcommand("compute", "All ranking metrics for a model");
    compute->add_option("--input", input_, "Input JSON document");
    compute->add_option("--preset", preset_, "Built-in model: scenario1 | figure3 | ldl_example");

    auto* question = app.add_subcommand("question", "Answer one treatment hierarchy question");
    question->add_option("--input", input_, "Input JSON document");
    question->add_option("--preset", preset_, "Built-in model");
    question->add_option("--kind", kind_, "Question kind");
    question->add_option("--threshold", threshold_, "Threshold for maximize_threshold_probability");
    question->add_option("--side", side_, "below | above (default: favourable side)");
    question->add_option("--reference", reference_, "Reference treatment name");

    auto* sweep = app.add_subcommand("sweep", "Sweep one treatment's sd or mean and detect crossovers");
    sweep->add_option("--input", input_, "Input JSON document");
    sweep->add_option("--preset", preset_, "table4 | figure3, or a built-in model name");
    sweep->add_option("--target", target_, "Treatment whose field is perturbed");
    sweep->add_option("--field", field_, "sd | mean (default: sd)");
    sweep->add_option("--grid", grid_, "start:stop:step");
    sweep->add_option("--metrics", metrics_, "Comma-separated metric kinds (default: p_best,sucra)");
    sweep->add_option("--pair", pair_, "Crossover pair, e.g. C,A (default: all pairs)");
    sweep->add_option("--threshold", threshold_, "Threshold for threshold_probability");
    sweep->add_option("--reference", reference_, "Reference for relative_effect");
    sweep->add_flag("--refine", refine_, "Bisect crossovers of analytic metrics to width 0.01");

    auto* reproduce = app.add_subcommand("reproduce", "Compare a built-in preset with published values");
    reproduce->add_option("name", reproduce_name_, "table3_scenario1 | table4 | figure3_crossovers")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out_ << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion&) {
        out_ << kVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err_ << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        check_format(g_.format);
        apply_threads();
        if (compute->parsed()) return do_compute();
        if (question->parsed()) return do_question();
        if (sweep->parsed()) return do_sweep();
        return do_reproduce();
    } catch (const IoError& e) {
        err_ << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ValidationError& e) {
        err_ << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err_ << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

int Runner::do_compute() {
    const auto in = load_model(input_, preset_);
    const auto mc = mc_of(g_);
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = compute(in, mc, g_.tie_tolerance);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (g_.format == "json") emit(io::to_json(r.doc).dump(2) + "\n");
    else if (g_.format == "csv") emit(render_compute_csv(r));
    else emit(render_compute_table(r, in.model, secs));
    return kExitOk;
}

int Runner::do_question() {
    const auto in = load_model(input_, preset_);
    const auto mc = mc_of(g_);
    io::QuestionBlock block;
    if (in.question) block = *in.question;
    if (!kind_.empty()) block = io::QuestionBlock{kind_, std::nullopt, std::nullopt, std::nullopt};
    if (block.kind.empty()) throw ValidationError("--kind is required (or a question block in the input)");
    if (!reference_.empty()) block.reference = reference_;
    if (threshold_) block.threshold = threshold_;
    if (!side_.empty()) block.side = side_;
    const auto q = io::resolve_question(block, in.model);
    const auto h = answer_hierarchy_question(in.model, q, mc, g_.tie_tolerance);

    if (g_.format == "json") {
        io::OutputDocument d;
        d.version = kVersion;
        d.command = "question";
        d.input_digest = in.digest;
        d.direction = std::string(to_string(in.model.direction));
        d.treatments = treatment_names(in.model);
        d.n_draws = mc.n_draws;
        d.seed = mc.seed;
        d.tie_policy = std::string(to_string(mc.tie_policy));
        d.metrics = {h.report};
        d.hierarchies = {io::HierarchyRecord::from(h)};
        emit(io::to_json(d).dump(2) + "\n");
        return kExitOk;
    }
    auto os = make_stream();
    if (g_.format == "csv") {
        os << "position,treatment,value,tie_group\n";
        std::size_t pos = 0;
        for (std::size_t g = 0; g < h.tie_groups.size(); ++g)
            for (auto id : h.tie_groups[g])
                os << ++pos << ',' << csv_field(h.names[id]) << ',' << io::format_number(h.report.values[id]) << ','
                   << g + 1 << '\n';
    } else {
        os << "question: " << h.question << '\n';
        os << "metric:   " << to_string(h.report.kind) << (h.report.detail.empty() ? "" : " (" + h.report.detail + ")")
           << (h.report.larger_is_better ? ", larger preferable" : ", smaller preferable") << '\n';
        os << "hierarchy: " << join_order(h) << '\n';
        for (auto id : h.order) os << "  " << std::left << std::setw(12) << h.names[id] << io::format_number(h.report.values[id]) << '\n';
        os << h.preferable_label() << '\n';
    }
    emit(os.str());
    return kExitOk;
}

int Runner::do_sweep() {
    const auto mc = mc_of(g_);
    SweepSpec spec;
    // Sweep presets supply defaults; explicit flags override them.
    if (input_.empty() && preset_ == "table4") {
        spec = presets::table4_sweep(mc);
    } else if (input_.empty() && preset_ == "figure3") {
        spec = presets::figure3_sweep(mc);
        if (pair_.empty()) pair_ = "C,A";
    } else {
        spec.base = load_model(input_, preset_).model;
        spec.mc = mc;
        if (target_.empty()) throw ValidationError("--target is required");
        if (grid_.empty()) throw ValidationError("--grid is required");
        spec.metrics = {MetricKind::p_best, MetricKind::sucra};
    }
    if (!target_.empty()) spec.target = spec.base.id_of(target_);
    if (!field_.empty()) spec.field = parse_sweep_field(field_);
    if (!grid_.empty()) spec.grid = parse_grid(grid_);
    if (!metrics_.empty()) {
        spec.metrics.clear();
        for (const auto& m : split_list(metrics_)) spec.metrics.push_back(parse_metric_kind(m));
    }
    if (threshold_) spec.threshold = threshold_;
    if (!reference_.empty()) spec.reference = spec.base.id_of(reference_);
    std::optional<std::pair<TreatmentId, TreatmentId>> pair;
    if (!pair_.empty()) {
        const auto items = split_list(pair_);
        if (items.size() != 2) throw ValidationError("--pair expects two treatment names, e.g. C,A");
        pair = std::make_pair(spec.base.id_of(items[0]), spec.base.id_of(items[1]));
        if (pair->first == pair->second) throw ValidationError("--pair needs two distinct treatments");
    }
    auto result = sweep_parameter(spec);
    auto xs = pair ? detect_crossovers(result, *pair) : result.crossovers;
    if (refine_)
        for (auto& c : xs) c = refine_crossover(spec, c);
    result.crossovers = xs;

    if (g_.format == "json") {
        auto j = io::to_json(result);
        j["target"] = result.names[spec.target];
        j["field"] = std::string(to_string(spec.field));
        j["provenance"] = {{"n_draws", mc.n_draws}, {"seed", mc.seed}, {"tie_policy", std::string(to_string(mc.tie_policy))}};
        emit(j.dump(2) + "\n");
        return kExitOk;
    }
    auto os = make_stream();
    if (g_.format == "csv") {
        os << "grid_value,metric,treatment,value\n";
        for (const auto& p : result.points)
            for (const auto& rep : p.reports)
                for (std::size_t i = 0; i < rep.values.size(); ++i)
                    os << io::format_number(p.value) << ',' << to_string(rep.kind) << ',' << csv_field(result.names[i])
                       << ',' << io::format_number(rep.values[i]) << '\n';
        os << render_crossovers(result, xs, "# ");
    } else {
        os << "sweep of " << to_string(spec.field) << " for " << result.names[spec.target] << " over "
           << result.points.size() << " grid points (" << mc.n_draws << " draws, seed " << mc.seed << ")\n";
        std::vector<std::string> header = result.names;
        print_row(os, "value / metric", header);
        for (const auto& p : result.points)
            for (const auto& rep : p.reports) {
                const bool pct = rep.kind == MetricKind::p_best || rep.kind == MetricKind::sucra ||
                                 rep.kind == MetricKind::p_score || rep.kind == MetricKind::threshold_probability;
                print_row(os, fixed(p.value, 2) + " " + std::string(to_string(rep.kind)),
                          pct ? cells(rep.values, 1, 100.0) : cells(rep.values, 2));
            }
        os << '\n' << render_crossovers(result, xs, "");
    }
    emit(os.str());
    return kExitOk;
}

int Runner::do_reproduce() {
    // Pinned defaults; --samples/--seed may still override them explicitly.
    const auto mc = mc_of(g_);
    std::vector<ReproCell> cells;
    if (reproduce_name_ == "table3_scenario1") cells = reproduce_table3(mc);
    else if (reproduce_name_ == "table4") cells = reproduce_table4(mc);
    else if (reproduce_name_ == "figure3_crossovers") cells = reproduce_figure3(mc);
    else {
        std::string names;
        for (const auto& n : presets::available()) names += (names.empty() ? "" : ", ") + n;
        throw ValidationError("unknown preset '" + reproduce_name_ + "' (available: " + names + ")");
    }
    bool all = true;
    for (const auto& c : cells) all = all && c.pass();

    if (g_.format == "json") {
        json j;
        j["preset"] = reproduce_name_;
        j["provenance"] = {{"n_draws", mc.n_draws}, {"seed", mc.seed}};
        j["cells"] = json::array();
        for (const auto& c : cells)
            j["cells"].push_back({{"row", c.row},
                                  {"treatment", c.treatment},
                                  {"computed", std::isnan(c.computed) ? json(nullptr) : json(c.computed)},
                                  {"published", c.published},
                                  {"tolerance", c.tolerance},
                                  {"pass", c.pass()}});
        j["all_pass"] = all;
        emit(j.dump(2) + "\n");
    } else {
        auto os = make_stream();
        const char sep = g_.format == "csv" ? ',' : ' ';
        if (g_.format == "csv") {
            os << "row,treatment,computed,published,abs_diff,tolerance,result\n";
            for (const auto& c : cells)
                os << csv_field(c.row) << sep << c.treatment << sep << io::format_number(c.computed) << sep
                   << io::format_number(c.published) << sep << io::format_number(std::abs(c.computed - c.published))
                   << sep << io::format_number(c.tolerance) << sep << (c.pass() ? "PASS" : "FAIL") << '\n';
        } else {
            os << "reproduce " << reproduce_name_ << " (" << mc.n_draws << " draws, seed " << mc.seed << ")\n";
            os << std::left << std::setw(34) << "row" << std::setw(10) << "treatment" << std::right << std::setw(10)
               << "computed" << std::setw(11) << "published" << std::setw(10) << "abs diff" << std::setw(8) << "tol"
               << "  result\n";
            for (const auto& c : cells)
                os << std::left << std::setw(34) << c.row << std::setw(10) << c.treatment << std::right << std::setw(10)
                   << fixed(c.computed, 3) << std::setw(11) << fixed(c.published, 1) << std::setw(10)
                   << fixed(std::abs(c.computed - c.published), 3) << std::setw(8) << fixed(c.tolerance, 2) << "  "
                   << (c.pass() ? "PASS" : "FAIL") << '\n';
            os << (all ? "all cells PASS\n" : "some cells FAIL\n");
        }
        emit(os.str());
    }
    return all ? kExitOk : kExitMismatch;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Runner r(out, err);
    return r.run(args);
}

} // namespace rankq::cli
