#include "oracles.hpp"

#include "rankq/effects.hpp"
#include "rankq/error.hpp"
#include "rankq/presets.hpp"
#include "rankq/reference.hpp"

#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace rankq;

namespace {

std::vector<std::size_t> argsort(const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    return idx;
}

EffectModel empirical_model(Matrix samples) {
    EffectModel m;
    std::vector<std::string> names;
    for (std::size_t c = 0; c < samples.cols(); ++c) names.push_back(std::string(1, static_cast<char>('A' + c)));
    m.treatments = make_treatments(names);
    m.distribution = EmpiricalSamplesModel{std::move(samples)};
    return m;
}

} // namespace

TEST_SUITE("effects") {
    TEST_CASE("scenario 1 model is valid") { CHECK_NOTHROW(validate_model(presets::scenario1())); }

    TEST_CASE("validation reports the violated invariant") {
        auto zero_sd = make_marginal_model({"P", "A", "B", "C"}, {10, 1, 2, 3}, {3, 3, 0, 3});
        CHECK_THROWS_WITH_AS(validate_model(zero_sd), "non-positive standard deviation", ValidationError);

        auto dup = make_marginal_model({"A", "A"}, {1, 2}, {1, 1});
        CHECK_THROWS_WITH_AS(validate_model(dup), doctest::Contains("duplicate treatment name"), ValidationError);

        auto single = make_marginal_model({"A"}, {1}, {1});
        CHECK_THROWS_WITH_AS(validate_model(single), doctest::Contains("T >= 2"), ValidationError);

        EffectModel asym;
        asym.treatments = make_treatments({"A", "B"});
        Matrix cov(2, 2);
        cov(0, 0) = 1;
        cov(1, 1) = 1;
        cov(0, 1) = 0.5;
        cov(1, 0) = 0.4;
        asym.distribution = JointNormalModel{{0, 0}, cov};
        CHECK_THROWS_WITH_AS(validate_model(asym), "non-symmetric covariance matrix", ValidationError);

        cov(0, 1) = cov(1, 0) = 2.0;
        asym.distribution = JointNormalModel{{0, 0}, cov};
        CHECK_THROWS_WITH_AS(validate_model(asym), doctest::Contains("positive semi-definite"), ValidationError);

        CHECK_THROWS_AS(validate_model(empirical_model(Matrix(10, 3))), ValidationError);
    }

    TEST_CASE("semi-definite covariance is accepted and factorised") {
        Matrix cov(3, 3);
        // Perfectly correlated first two treatments.
        const double c[3][3] = {{1, 1, 0.2}, {1, 1, 0.2}, {0.2, 0.2, 2}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) cov(i, j) = c[i][j];
        const Matrix L = psd_cholesky(cov);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double acc = 0;
                for (int k = 0; k < 3; ++k) acc += L(i, k) * L(j, k);
                CHECK(acc == doctest::Approx(cov(i, j)).epsilon(1e-12));
            }
    }

    TEST_CASE("column means of 1e6 draws are within 0.01 of M") {
        const auto model = presets::scenario1();
        const auto x = draw_samples(model, 1'000'000, 2024);
        const std::vector<double> expect = {10, 1, 2, 3};
        for (std::size_t c = 0; c < 4; ++c) {
            double mean = 0, sq = 0;
            for (std::size_t k = 0; k < x.rows(); ++k) mean += x(k, c);
            mean /= static_cast<double>(x.rows());
            for (std::size_t k = 0; k < x.rows(); ++k) sq += (x(k, c) - mean) * (x(k, c) - mean);
            const double sd = std::sqrt(sq / static_cast<double>(x.rows() - 1));
            CHECK(std::abs(mean - expect[c]) <= 0.01);
            // SD of the sample SD is about sd / sqrt(2n); allow 4 standard errors.
            CHECK(std::abs(sd - 3.0) <= 4.0 * 3.0 / std::sqrt(2e6));
        }
    }

    TEST_CASE("single draw is finite") {
        const auto x = draw_samples(presets::scenario1(), 1, 5);
        REQUIRE(x.rows() == 1);
        for (double v : x.row(0)) CHECK(std::isfinite(v));
    }

    TEST_CASE("zero draws is an error") { CHECK_THROWS_AS(draw_samples(presets::scenario1(), 0, 1), ValidationError); }

    TEST_CASE("empirical model with one distinct row always resamples it") {
        Matrix s(100, 3);
        for (std::size_t k = 0; k < 100; ++k) {
            s(k, 0) = 1.5;
            s(k, 1) = -2;
            s(k, 2) = 7;
        }
        const auto x = draw_samples(empirical_model(s), 500, 3);
        for (std::size_t k = 0; k < x.rows(); ++k) {
            CHECK(x(k, 0) == 1.5);
            CHECK(x(k, 1) == -2);
            CHECK(x(k, 2) == 7);
        }
    }

    TEST_CASE("empirical resampling picks rows uniformly") {
        Matrix s(100, 2);
        for (std::size_t k = 0; k < 100; ++k) {
            s(k, 0) = static_cast<double>(k);
            s(k, 1) = -static_cast<double>(k);
        }
        const auto x = draw_samples(empirical_model(s), 200000, 11);
        double mean = 0;
        for (std::size_t k = 0; k < x.rows(); ++k) {
            REQUIRE(x(k, 1) == -x(k, 0)); // whole rows are copied
            mean += x(k, 0);
        }
        mean /= static_cast<double>(x.rows());
        CHECK(std::abs(mean - 49.5) < 4 * 28.87 / std::sqrt(200000.0));
    }

    TEST_CASE("joint normal draws reproduce the covariance") {
        EffectModel m;
        m.treatments = make_treatments({"A", "B", "C"});
        Matrix cov(3, 3);
        const double c[3][3] = {{4, 1.2, -0.5}, {1.2, 1, 0.3}, {-0.5, 0.3, 2}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) cov(i, j) = c[i][j];
        m.distribution = JointNormalModel{{1, 2, 3}, cov};
        validate_model(m);
        const std::size_t n = 400000;
        const auto x = draw_samples(m, n, 8);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j <= i; ++j) {
                double mi = 0, mj = 0, acc = 0;
                for (std::size_t k = 0; k < n; ++k) {
                    mi += x(k, i);
                    mj += x(k, j);
                }
                mi /= n;
                mj /= n;
                for (std::size_t k = 0; k < n; ++k) acc += (x(k, i) - mi) * (x(k, j) - mj);
                CHECK(std::abs(acc / (n - 1) - cov(i, j)) < 0.04);
            }
    }

    TEST_CASE("draws are bit-identical to the serial reference for any thread count") {
        const auto model = presets::scenario1();
        const auto ref = reference::draw_samples(model, 50000, 77);
#ifdef _OPENMP
        const int saved = omp_get_max_threads();
        for (int threads : {1, 2, 3, 8}) {
            omp_set_num_threads(threads);
            CHECK(draw_samples(model, 50000, 77) == ref);
        }
        omp_set_num_threads(saved);
#else
        CHECK(draw_samples(model, 50000, 77) == ref);
#endif
        CHECK(draw_samples(model, 50000, 78) != ref);
    }

    TEST_CASE("canonical direction negates larger_better means") {
        const auto m = make_marginal_model({"A", "B", "C", "D"}, {1, 1.5, 2, -2}, {1, 1, 1, 1},
                                           OutcomeDirection::larger_better);
        const auto c = to_canonical_direction(m);
        CHECK(c.direction == OutcomeDirection::smaller_better);
        CHECK(model_means(c) == std::vector<double>{-1, -1.5, -2, 2});
        CHECK(std::get<MarginalNormalModel>(c.distribution).sds == std::vector<double>{1, 1, 1, 1});
        CHECK(to_canonical_direction(c) == c);

        const auto s = make_marginal_model({"A", "B"}, {1, 2}, {1, 1});
        CHECK(to_canonical_direction(s) == s);

        // Negating back recovers the original means exactly.
        auto back = model_means(c);
        for (double& v : back) v = -v;
        CHECK(back == model_means(m));
    }

    TEST_CASE("relative effects against a reference") {
        const auto model = presets::scenario1();
        const auto rel = relative_effects(model, model.id_of("A"));
        CHECK(rel.differences == std::vector<double>{9, 0, 1, 2});
        REQUIRE(rel.standard_errors);
        CHECK((*rel.standard_errors)[model.id_of("B")] == doctest::Approx(std::sqrt(18.0)).epsilon(1e-15));
        CHECK(std::sqrt(18.0) == doctest::Approx(4.2426).epsilon(1e-5));
        CHECK_THROWS_AS(relative_effects(model, 9), ValidationError);
    }

    TEST_CASE("pair SE agrees with the spread of differenced draws") {
        const auto model = make_marginal_model({"A", "B"}, {1, 2}, {3, 3});
        const auto x = draw_samples(model, 400000, 1);
        double m = 0, sq = 0;
        for (std::size_t k = 0; k < x.rows(); ++k) m += x(k, 0) - x(k, 1);
        m /= x.rows();
        for (std::size_t k = 0; k < x.rows(); ++k) sq += std::pow(x(k, 0) - x(k, 1) - m, 2);
        CHECK(std::sqrt(sq / (x.rows() - 1)) == doctest::Approx(pair_standard_error(model, 0, 1)).epsilon(0.005));
    }

    TEST_CASE("reference choice never changes the ordering") {
        std::mt19937_64 rng(3);
        for (int rep = 0; rep < 50; ++rep) {
            const auto rm = oracle::random_model(rng, 5);
            const auto model = make_marginal_model({"A", "B", "C", "D", "E"}, rm.means, rm.sds);
            for (TreatmentId ref = 0; ref < 5; ++ref)
                CHECK(argsort(relative_effects(model, ref).differences) == argsort(rm.means));
        }
    }
}
