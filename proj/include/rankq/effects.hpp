#pragma once

#include "rankq/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rankq {

using TreatmentId = std::size_t;

struct Treatment {
    TreatmentId id = 0;
    std::string name;

    friend bool operator==(const Treatment&, const Treatment&) = default;
};

enum class OutcomeDirection { smaller_better, larger_better };

std::string_view to_string(OutcomeDirection d);
OutcomeDirection parse_direction(std::string_view s);

// Independent normals: mu_i ~ N(means[i], sds[i]^2).
struct MarginalNormalModel {
    std::vector<double> means;
    std::vector<double> sds;

    friend bool operator==(const MarginalNormalModel&, const MarginalNormalModel&) = default;
};

// Correlated normals with mean vector and T x T covariance.
struct JointNormalModel {
    std::vector<double> means;
    Matrix covariance;

    friend bool operator==(const JointNormalModel&, const JointNormalModel&) = default;
};

// S joint draws (rows) over T treatments (columns), e.g. MCMC output or bootstrap replicates.
struct EmpiricalSamplesModel {
    Matrix samples;

    friend bool operator==(const EmpiricalSamplesModel&, const EmpiricalSamplesModel&) = default;
};

using Distribution = std::variant<MarginalNormalModel, JointNormalModel, EmpiricalSamplesModel>;

inline constexpr std::size_t kMinEmpiricalRows = 100;

struct EffectModel {
    std::vector<Treatment> treatments;
    OutcomeDirection direction = OutcomeDirection::smaller_better;
    Distribution distribution;

    std::size_t size() const { return treatments.size(); }
    bool is_normal() const { return !std::holds_alternative<EmpiricalSamplesModel>(distribution); }

    // Looks a treatment up by name; throws ValidationError when absent.
    TreatmentId id_of(std::string_view name) const;
    const std::string& name_of(TreatmentId id) const { return treatments.at(id).name; }

    friend bool operator==(const EffectModel&, const EffectModel&) = default;
};

// Builds treatments 0..T-1 from a list of names.
std::vector<Treatment> make_treatments(const std::vector<std::string>& names);

EffectModel make_marginal_model(const std::vector<std::string>& names, std::vector<double> means,
                                std::vector<double> sds,
                                OutcomeDirection direction = OutcomeDirection::smaller_better);

// Returns the model unchanged if every invariant holds, otherwise throws
// ValidationError naming the first violation.
const EffectModel& validate_model(const EffectModel& model);

// Center of each treatment's distribution (column means for empirical models).
std::vector<double> model_means(const EffectModel& model);

// Variance of each treatment's marginal distribution.
std::vector<double> model_variances(const EffectModel& model);

// Standard error of mu_i - mu_j for normal models.
double pair_standard_error(const EffectModel& model, TreatmentId i, TreatmentId j);

// Lower-triangular factor L with L L^T = cov. Zero pivots are allowed (PSD);
// throws ValidationError when cov is not positive semi-definite.
Matrix psd_cholesky(const Matrix& cov);

// n_draws x T joint draws. Row k depends only on (model, seed, k), so the
// result is bit-identical for any OpenMP thread count.
Matrix draw_samples(const EffectModel& model, std::size_t n_draws, std::uint64_t seed);

// Negates means/samples of larger_better models so that smaller is always preferable.
EffectModel to_canonical_direction(const EffectModel& model);

struct RelativeEffects {
    TreatmentId reference = 0;
    std::vector<double> differences;                    // D_i,ref = M_i - M_ref
    std::optional<std::vector<double>> standard_errors; // normal models only
};

RelativeEffects relative_effects(const EffectModel& model, TreatmentId reference);

} // namespace rankq
