// Times the OpenMP kernels against the serial reference kernels and checks
// that both produce the same rank-probability matrix.

#include "rankq/metrics.hpp"
#include "rankq/presets.hpp"
#include "rankq/rank_probs.hpp"
#include "rankq/reference.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

namespace {

template <class F>
double seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1'000'000;
    const std::uint64_t seed = 20200101;
    const auto model = rankq::presets::scenario1();
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::cout << "draws " << n << ", T " << model.size() << ", threads " << threads << '\n';

    rankq::Matrix a, b;
    const double t_draw_ref = seconds([&] { a = rankq::reference::draw_samples(model, n, seed); });
    const double t_draw_omp = seconds([&] { b = rankq::draw_samples(model, n, seed); });
    std::cout << "draw_samples       serial " << t_draw_ref << " s   openmp " << t_draw_omp << " s   identical "
              << (a == b ? "yes" : "NO") << '\n';

    rankq::RankProbabilityMatrix pr, po;
    const double t_rank_ref = seconds([&] { pr = rankq::reference::rank_probabilities(a, rankq::TiePolicy::random, seed); });
    const double t_rank_omp = seconds([&] { po = rankq::rank_probabilities(a, rankq::TiePolicy::random, seed); });
    std::cout << "rank_probabilities serial " << t_rank_ref << " s   openmp " << t_rank_omp << " s   identical "
              << (pr.p == po.p ? "yes" : "NO") << '\n';

    rankq::RankProbabilityMatrix fr, fo;
    const double t_fused_ref =
        seconds([&] { fr = rankq::reference::simulate_rank_probabilities(model, n, seed, rankq::TiePolicy::random); });
    const double t_fused_omp =
        seconds([&] { fo = rankq::simulate_rank_probabilities(model, n, seed, rankq::TiePolicy::random); });
    std::cout << "simulate (fused)   serial " << t_fused_ref << " s   openmp " << t_fused_omp << " s   identical "
              << (fr.p == fo.p ? "yes" : "NO") << '\n';
    return (a == b && pr.p == po.p && fr.p == fo.p) ? 0 : 1;
}
