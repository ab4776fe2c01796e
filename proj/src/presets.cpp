#include "rankq/presets.hpp"

namespace rankq::presets {

EffectModel scenario1() {
    return make_marginal_model({"P", "A", "B", "C"}, {10, 1, 2, 3}, {3, 3, 3, 3});
}

EffectModel figure3_base() {
    return make_marginal_model({"P", "A", "B", "C"}, {-2, 1, 1.5, 2}, {1, 1, 1, 1});
}

EffectModel ldl_example() {
    return make_marginal_model({"A", "B", "C"}, {2.4, 2.0, 2.2}, {0.8, 1.5, 0.2});
}

SweepSpec table4_sweep(const McConfig& mc) {
    SweepSpec s;
    s.base = scenario1();
    s.target = 1;
    s.field = SweepField::sd;
    s.grid = {3, 10, 15, 20};
    s.metrics = {MetricKind::sucra};
    s.mc = mc;
    return s;
}

SweepSpec figure3_sweep(const McConfig& mc) {
    SweepSpec s;
    s.base = figure3_base();
    s.target = 3;
    s.field = SweepField::sd;
    s.grid = make_grid(1.0, 10.0, 0.1);
    s.metrics = {MetricKind::p_best, MetricKind::sucra};
    s.mc = mc;
    return s;
}

std::vector<ReferenceCell> table3_scenario1_cells() {
    const std::vector<std::string> t = {"P", "A", "B", "C"};
    struct Row {
        const char* label;
        double values[4];
        double tol;
    };
    const Row rows[] = {
        {"p_BV (%)", {0.2, 48, 31.7, 20.1}, 0.5},
        {"cp_2 (%)", {1.4, 79.3, 67.7, 51.7}, 0.5},
        {"cp_3 (%)", {8, 98.8, 97.5, 95.7}, 0.5},
        {"cp_4 (%)", {100, 100, 100, 100}, 0.5},
        {"SUCRA (%)", {3.2, 75.2, 65.6, 56.0}, 0.5},
        {"P-score (%)", {3.2, 75.2, 65.6, 56.0}, 0.5},
        {"Mean rank", {3.9, 1.7, 2.0, 2.3}, 0.05},
        {"Median rank", {4, 2, 2, 2}, 0.0},
    };
    std::vector<ReferenceCell> out;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < 4; ++i) out.push_back({r.label, t[i], r.values[i], r.tol});
    return out;
}

std::vector<ReferenceCell> table4_cells() {
    const std::vector<std::string> t = {"P", "A", "B", "C"};
    struct Row {
        const char* label;
        double values[4];
    };
    const Row rows[] = {
        {"SUCRA (%) SD_A=3", {3.2, 75.3, 65.6, 55.9}},
        {"SUCRA (%) SD_A=10", {9.1, 63.9, 67.5, 59.5}},
        {"SUCRA (%) SD_A=15", {11.9, 59.9, 67.9, 60.3}},
        {"SUCRA (%) SD_A=20", {13.6, 57.7, 68.1, 60.6}},
    };
    std::vector<ReferenceCell> out;
    for (const auto& r : rows)
        for (std::size_t i = 0; i < 4; ++i) out.push_back({r.label, t[i], r.values[i], 0.5});
    return out;
}

std::vector<CrossoverTarget> figure3_targets() {
    return {{"p_best", 2.0, 0.5}, {"sucra", 7.5, 0.5}};
}

std::vector<std::string> available() { return {"table3_scenario1", "table4", "figure3_crossovers"}; }

} // namespace rankq::presets
