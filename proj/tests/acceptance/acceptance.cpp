// Acceptance suite: one PASS/FAIL line per criterion, followed by detail lines.
// Usage: rankq_acceptance [--criterion N]

#include "oracles.hpp"

#include "rankq/effects.hpp"
#include "rankq/hierarchy.hpp"
#include "rankq/metrics.hpp"
#include "rankq/presets.hpp"
#include "rankq/random.hpp"
#include "rankq/rank_probs.hpp"
#include "rankq/sensitivity.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

using namespace rankq;

namespace {

constexpr std::uint64_t kSeed = 20200101;
constexpr std::size_t kDraws = 1'000'000;

struct Check {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("  FAIL " + what);
        }
    }
    void note(const std::string& what) { notes.push_back("  " + what); }
};

std::string fmt(double x, int digits = 3) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::size_t> argsort(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    return idx;
}

std::vector<std::string> default_names(std::size_t T) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < T; ++i) names.push_back("t" + std::to_string(i));
    return names;
}

// Standard error of a Monte Carlo SUCRA estimate: each draw contributes (T - r) / (T - 1).
double sucra_standard_error(const RankProbabilityMatrix& p, std::size_t i) {
    const double T = static_cast<double>(p.size());
    double m = 0, m2 = 0;
    for (std::size_t r = 0; r < p.size(); ++r) {
        const double v = (T - static_cast<double>(r + 1)) / (T - 1.0);
        m += p(i, r) * v;
        m2 += p(i, r) * v * v;
    }
    return std::sqrt(std::max(0.0, m2 - m * m) / static_cast<double>(p.n_draws));
}

Check golden_table() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = simulate_rank_summary(presets::scenario1(), {kDraws, kSeed, TiePolicy::random});
    const double secs = seconds_since(t0);
    const std::array<std::string, 4> names = {"P", "A", "B", "C"};
    const double p_best[4] = {0.2, 48, 31.7, 20.1};
    const double cp2[4] = {1.4, 79.3, 67.7, 51.7};
    const double cp3[4] = {8, 98.8, 97.5, 95.7};
    const double sucra[4] = {3.2, 75.2, 65.6, 56.0};
    const double mean[4] = {3.9, 1.7, 2.0, 2.3};
    const double median[4] = {4, 2, 2, 2};
    for (int i = 0; i < 4; ++i) {
        const auto cell = [&](const char* row, double got, double want, double tol) {
            c.expect(std::abs(got - want) <= tol, std::string(row) + "[" + names[i] + "] = " + fmt(got) + " vs " +
                                                      fmt(want, 1) + " (tol " + fmt(tol, 2) + ")");
        };
        cell("p_best%", 100 * s.p_best.values[i], p_best[i], 0.5);
        cell("cp_2%", 100 * s.cp(i, 1), cp2[i], 0.5);
        cell("cp_3%", 100 * s.cp(i, 2), cp3[i], 0.5);
        cell("SUCRA%", 100 * s.sucra.values[i], sucra[i], 0.5);
        cell("mean rank", s.mean_rank.values[i], mean[i], 0.05);
        cell("median rank", s.median_rank.values[i], median[i], 0.0);
    }
    c.expect(secs < 10.0, "runtime " + fmt(secs, 2) + " s >= 10 s");
    c.note("24 cells checked, runtime " + fmt(secs, 2) + " s");
    return c;
}

Check p_score_agreement() {
    Check c;
    const auto ps = p_score(presets::scenario1());
    const auto s = simulate_rank_summary(presets::scenario1(), {kDraws, kSeed, TiePolicy::random});
    const std::array<std::string, 4> names = {"P", "A", "B", "C"};
    const double published[4] = {3.2, 75.2, 65.6, 56.0};
    for (int i = 0; i < 4; ++i) {
        const double got = 100 * ps.values[i];
        const double mc = 100 * s.sucra.values[i];
        c.note("P-score[" + names[i] + "] = " + fmt(got, 4) + "  published " + fmt(published[i], 1) + "  MC SUCRA " +
               fmt(mc, 4));
        c.expect(std::abs(got - published[i]) <= 0.05, "analytic P-score[" + names[i] + "] differs from " +
                                                           fmt(published[i], 1) + " by " +
                                                           fmt(std::abs(got - published[i]), 4) + "pp (tol 0.05pp)");
        c.expect(std::abs(got - mc) <= 0.5,
                 "|P-score - MC SUCRA|[" + names[i] + "] = " + fmt(std::abs(got - mc), 4) + "pp (tol 0.5pp)");
    }
    return c;
}

Check sd_sweep_table() {
    Check c;
    const auto r = sweep_parameter(presets::table4_sweep({kDraws, kSeed, TiePolicy::random}));
    const auto ref = presets::table4_cells();
    for (std::size_t k = 0; k < ref.size(); ++k) {
        const double got = 100 * r.points[k / 4].reports[0].values[k % 4];
        c.expect(std::abs(got - ref[k].published) <= ref[k].tolerance,
                 ref[k].row + "[" + ref[k].treatment + "] = " + fmt(got) + " vs " + fmt(ref[k].published, 1));
    }
    const auto h = rank_treatments(r.points.back().reports[0], r.names, 0.0);
    std::vector<std::string> actives;
    for (auto id : h.order)
        if (r.names[id] != "P") actives.push_back(r.names[id]);
    c.expect(actives == std::vector<std::string>{"B", "C", "A"}, "SD_A = 20 ordering of actives is not B, C, A");
    c.note(std::to_string(ref.size()) + " cells checked; SD_A = 20 order " + actives[0] + ", " + actives[1] + ", " +
           actives[2]);
    return c;
}

Check crossover_figure() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = sweep_parameter(presets::figure3_sweep({kDraws, kSeed, TiePolicy::random}));
    const double secs = seconds_since(t0);
    const auto xs = detect_crossovers(r, {3, 1});
    auto span = [&](MetricKind k) {
        double lo = INFINITY, hi = -INFINITY;
        for (const auto& x : xs)
            if (x.metric == k) {
                lo = std::min(lo, x.lo);
                hi = std::max(hi, x.hi);
            }
        return std::make_pair(lo, hi);
    };
    const auto [pb_lo, pb_hi] = span(MetricKind::p_best);
    const auto [su_lo, su_hi] = span(MetricKind::sucra);
    c.note("p_best (C,A) flip within [" + fmt(pb_lo, 2) + ", " + fmt(pb_hi, 2) + "], SUCRA (C,A) flip within [" +
           fmt(su_lo, 2) + ", " + fmt(su_hi, 2) + "], runtime " + fmt(secs, 1) + " s");
    c.expect(pb_lo <= pb_hi && pb_lo >= 1.5 && pb_hi <= 2.5, "p_best crossover outside [1.5, 2.5]");
    c.expect(su_lo <= su_hi && su_lo >= 7.0 && su_hi <= 8.0, "SUCRA crossover outside [7.0, 8.0]");
    c.expect(pb_hi < su_lo, "p_best crossover is not strictly below the SUCRA crossover");
    c.expect(secs < 60.0, "runtime " + fmt(secs, 1) + " s >= 60 s");
    return c;
}

Check identities() {
    Check c;
    std::mt19937_64 rng(kSeed);
    double worst_identity = 0, worst_stochastic = 0, worst_pbest = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t T = 2 + rep % 9;
        RankProbabilityMatrix p;
        p.p = Matrix(T, T);
        p.n_draws = 1;
        const auto rows = oracle::random_doubly_stochastic(rng, T);
        for (std::size_t i = 0; i < T; ++i)
            for (std::size_t r = 0; r < T; ++r) p.p(i, r) = rows[i][r];
        const auto su = sucra(cumulative_rank_probabilities(p));
        const auto mr = mean_rank(p);
        for (std::size_t i = 0; i < T; ++i)
            worst_identity = std::max(
                worst_identity, std::abs(mr.values[i] - (static_cast<double>(T) - (T - 1.0) * su.values[i])));
    }
    c.expect(worst_identity <= 1e-9, "mean rank identity error " + fmt(worst_identity, 12));

    // Rank matrices from samples (continuous and heavily tied) under both tie policies.
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t T = 2 + rep % 7;
        Matrix s(2000, T);
        std::uniform_int_distribution<int> coarse(0, 3);
        std::normal_distribution<double> fine;
        for (double& v : s.data()) v = rep % 2 ? coarse(rng) : fine(rng);
        for (auto policy : {TiePolicy::random, TiePolicy::average}) {
            const auto p = rank_probabilities(s, policy, static_cast<std::uint64_t>(rep));
            double pb = 0;
            for (std::size_t i = 0; i < T; ++i) {
                double row = 0, col = 0;
                for (std::size_t r = 0; r < T; ++r) {
                    row += p(i, r);
                    col += p(r, i);
                }
                worst_stochastic = std::max({worst_stochastic, std::abs(row - 1), std::abs(col - 1)});
                pb += p(i, 0);
            }
            worst_pbest = std::max(worst_pbest, std::abs(pb - 1));
        }
    }
    c.expect(worst_stochastic <= 1e-9, "rank matrix not doubly stochastic: " + fmt(worst_stochastic, 12));
    c.expect(worst_pbest <= 1e-9, "p_best does not sum to 1: " + fmt(worst_pbest, 12));

    bool antisym = true;
    for (int rep = 0; rep < 200; ++rep) {
        const auto rm = oracle::random_model(rng, 4);
        const auto m = make_marginal_model({"a", "b", "c", "d"}, rm.means, rm.sds);
        for (TreatmentId i = 0; i < 4; ++i)
            for (TreatmentId j = 0; j < 4; ++j)
                if (i != j) antisym = antisym && beat_probability(m, i, j) + beat_probability(m, j, i) == 1.0;
    }
    c.expect(antisym, "beat probability antisymmetry is not exact");

    const auto eq = make_marginal_model({"a", "b", "c", "d"}, {2, 2, 2, 2}, {0.5, 1, 3, 8});
    for (double v : p_score(eq).values) c.expect(v == 0.5, "equal-mean P-score " + fmt(v, 17) + " != 0.5");
    const auto s = simulate_rank_summary(eq, {kDraws, kSeed, TiePolicy::random});
    double worst_z = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double se = sucra_standard_error(s.p, i);
        const double z = std::abs(s.sucra.values[i] - 0.5) / se;
        worst_z = std::max(worst_z, z);
        c.expect(z <= 3, "equal-mean MC SUCRA " + fmt(s.sucra.values[i], 5) + " is " + fmt(z, 2) + " SE from 0.5");
    }
    c.note("max identity error " + fmt(worst_identity, 15) + ", max stochastic error " + fmt(worst_stochastic, 15) +
           ", equal-mean SUCRA max " + fmt(worst_z, 2) + " SE");
    return c;
}

Check oracle_equivalence() {
    Check c;
    std::mt19937_64 rng(kSeed + 6);
    const std::size_t n = 200'000;
    std::size_t checks = 0, misses = 0;
    double worst_z = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t T = 2 + rep % 5;
        const auto rm = oracle::random_model(rng, T);
        const auto names = default_names(T);
        const auto m = make_marginal_model(names, rm.means, rm.sds);
        const std::uint64_t seed = derive_key(kSeed, static_cast<std::uint64_t>(rep));
        const auto s = simulate_rank_summary(m, {n, seed, TiePolicy::random});
        for (std::size_t i = 0; i < T; ++i) {
            const double want = oracle::average_beat(rm.means, rm.sds, i);
            const double se = sucra_standard_error(s.p, i);
            const double z = se > 0 ? std::abs(s.sucra.values[i] - want) / se : 0.0;
            worst_z = std::max(worst_z, z);
            ++checks;
            if (z > 3) {
                ++misses;
                c.expect(false, "model " + std::to_string(rep) + " SUCRA[" + names[i] + "] off by " + fmt(z, 2) + " SE");
            }
        }
        const auto x = draw_samples(m, n, seed);
        for (std::size_t i = 0; i < T; ++i)
            for (std::size_t j = i + 1; j < T; ++j) { // (j, i) is the exact complement
                const double q = oracle::phi((rm.means[j] - rm.means[i]) / std::hypot(rm.sds[i], rm.sds[j]));
                const double se = std::sqrt(q * (1 - q) / static_cast<double>(n));
                const double z = se > 0 ? std::abs(beat_fraction(x, i, j) - q) / se : 0.0;
                worst_z = std::max(worst_z, z);
                ++checks;
                if (z > 3) {
                    ++misses;
                    c.expect(false, "model " + std::to_string(rep) + " beat(" + names[i] + "," + names[j] +
                                        ") off by " + fmt(z, 2) + " SE");
                }
            }
    }
    // Each comparison exceeds 3 SE with probability ~0.27% even for an exact sampler.
    const double expected = static_cast<double>(checks) * 2.0 * (1.0 - oracle::phi(3.0));
    c.note(std::to_string(checks) + " comparisons at n = " + std::to_string(n) + ", " + std::to_string(misses) +
           " beyond 3 SE (about " + fmt(expected, 1) + " expected by chance), max " + fmt(worst_z, 2) + " SE");
    return c;
}

Check invariances() {
    Check c;
    std::mt19937_64 rng(kSeed + 7);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t T = 2 + rep % 7;
        const auto rm = oracle::random_model(rng, T);
        const auto names = default_names(T);
        const auto m = make_marginal_model(names, rm.means, rm.sds);
        for (TreatmentId ref = 0; ref < T; ++ref)
            c.expect(argsort(relative_effects(m, ref).differences) == argsort(rm.means),
                     "model " + std::to_string(rep) + ": reference " + names[ref] + " changes the ordering");
    }
    for (int rep = 0; rep < 100; ++rep) {
        const auto rm = oracle::random_model(rng, 2);
        const auto m = make_marginal_model({"x", "y"}, rm.means, rm.sds);
        const double d12 = relative_effects(m, 1).differences[0];
        c.expect((d12 < 0) == (beat_probability(m, 0, 1) > 0.5),
                 "T = 2 model " + std::to_string(rep) + ": sign of D_12 disagrees with the beat probability");
    }
    c.note("100 models x all references, 100 two-treatment models");
    return c;
}

std::string capture(const std::string& args) {
    const std::string cmd = std::string(RANKQ_BINARY) + " " + args + " 2>/dev/null";
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
    if (!pipe) return {};
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
    return out;
}

Check determinism() {
    Check c;
    const std::vector<std::string> invocations = {
        "compute --preset scenario1 --format json",
        "compute --preset scenario1 --format csv --seed 7 --samples 200000",
        "question --preset ldl_example --kind most_likely_best_value --format json",
        "sweep --preset figure3 --samples 20000 --format csv",
        "sweep --preset table4 --format json",
        "reproduce table3_scenario1 --format json",
        "reproduce table4 --format csv",
    };
    for (const auto& inv : invocations) {
        const auto a = capture(inv + " --threads 1");
        const auto b = capture(inv + " --threads 1");
        const auto d = capture(inv + " --threads 4");
        c.expect(!a.empty(), "no output from: " + inv);
        c.expect(a == b, "repeat run differs: " + inv);
        c.expect(a == d, "thread count changes output: " + inv);
    }
    c.note(std::to_string(invocations.size()) + " invocations compared byte-for-byte (threads 1, 1, 4)");
    return c;
}

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int k = 1; k < argc; ++k)
        if (std::string(argv[k]) == "--criterion" && k + 1 < argc) only = std::atoi(argv[++k]);

    const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
        {"scenario 1 golden rank summary", golden_table},
        {"analytic P-score vs published and MC SUCRA", p_score_agreement},
        {"SD_A sweep SUCRA and SD_A = 20 ordering", sd_sweep_table},
        {"SD_C sweep (C,A) crossovers", crossover_figure},
        {"identity suite", identities},
        {"oracle equivalence (SUCRA, beat probabilities)", oracle_equivalence},
        {"reference and two-treatment invariances", invariances},
        {"byte-identical machine-readable output", determinism},
    };
    bool all = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (only && static_cast<int>(k + 1) != only) continue;
        const auto result = criteria[k].second();
        std::cout << (result.ok ? "PASS" : "FAIL") << "  criterion " << k + 1 << ": " << criteria[k].first << '\n';
        for (const auto& n : result.notes) std::cout << n << '\n';
        all = all && result.ok;
    }
    return all ? 0 : 1;
}
