#include "rankq/effects.hpp"

#include "rankq/error.hpp"
#include "rankq/random.hpp"
#include "rankq/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rankq {

std::string_view to_string(OutcomeDirection d) {
    return d == OutcomeDirection::smaller_better ? "smaller_better" : "larger_better";
}

OutcomeDirection parse_direction(std::string_view s) {
    if (s == "smaller_better") return OutcomeDirection::smaller_better;
    if (s == "larger_better") return OutcomeDirection::larger_better;
    throw ValidationError("unknown outcome direction '" + std::string(s) +
                          "' (expected smaller_better or larger_better)");
}

TreatmentId EffectModel::id_of(std::string_view name) const {
    for (const auto& t : treatments)
        if (t.name == name) return t.id;
    throw ValidationError("unknown treatment '" + std::string(name) + "'");
}

std::vector<Treatment> make_treatments(const std::vector<std::string>& names) {
    std::vector<Treatment> out;
    out.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) out.push_back({i, names[i]});
    return out;
}

EffectModel make_marginal_model(const std::vector<std::string>& names, std::vector<double> means,
                                std::vector<double> sds, OutcomeDirection direction) {
    EffectModel m;
    m.treatments = make_treatments(names);
    m.direction = direction;
    m.distribution = MarginalNormalModel{std::move(means), std::move(sds)};
    return m;
}

Matrix psd_cholesky(const Matrix& cov) {
    const std::size_t n = cov.rows();
    Matrix L(n, n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(cov(i, i)));
    const double tol = 1e-12 * std::max(scale, 1.0);

    for (std::size_t j = 0; j < n; ++j) {
        double pivot = cov(j, j);
        for (std::size_t k = 0; k < j; ++k) pivot -= L(j, k) * L(j, k);
        if (pivot < -tol) throw ValidationError("covariance matrix is not positive semi-definite");
        if (pivot <= tol) {
            // Degenerate direction: column j is a combination of earlier ones.
            for (std::size_t i = j + 1; i < n; ++i) {
                double r = cov(i, j);
                for (std::size_t k = 0; k < j; ++k) r -= L(i, k) * L(j, k);
                if (std::abs(r) > 1e-9 * std::max(scale, 1.0))
                    throw ValidationError("covariance matrix is not positive semi-definite");
            }
            continue;
        }
        const double d = std::sqrt(pivot);
        L(j, j) = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            double r = cov(i, j);
            for (std::size_t k = 0; k < j; ++k) r -= L(i, k) * L(j, k);
            L(i, j) = r / d;
        }
    }
    return L;
}

namespace {

void check_finite(std::span<const double> v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw ValidationError(std::string("non-finite ") + what);
}

struct Validator {
    std::size_t T;

    void operator()(const MarginalNormalModel& m) const {
        if (m.means.size() != T || m.sds.size() != T)
            throw ValidationError("means/sds length does not match treatment count");
        check_finite(m.means, "mean");
        for (double sd : m.sds)
            if (!(sd > 0.0) || !std::isfinite(sd))
                throw ValidationError("non-positive standard deviation");
    }

    void operator()(const JointNormalModel& m) const {
        if (m.means.size() != T) throw ValidationError("means length does not match treatment count");
        if (m.covariance.rows() != T || m.covariance.cols() != T)
            throw ValidationError("covariance matrix must be T x T");
        check_finite(m.means, "mean");
        check_finite(m.covariance.data(), "covariance entry");
        for (std::size_t i = 0; i < T; ++i) {
            if (!(m.covariance(i, i) > 0.0))
                throw ValidationError("non-positive covariance diagonal");
            for (std::size_t j = 0; j < i; ++j) {
                const double a = m.covariance(i, j), b = m.covariance(j, i);
                if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}))
                    throw ValidationError("non-symmetric covariance matrix");
            }
        }
        (void)psd_cholesky(m.covariance);
    }

    void operator()(const EmpiricalSamplesModel& m) const {
        if (m.samples.cols() != T)
            throw ValidationError("sample matrix column count does not match treatment count");
        if (m.samples.rows() < kMinEmpiricalRows)
            throw ValidationError("empirical sample matrix needs at least " +
                                  std::to_string(kMinEmpiricalRows) + " rows");
        check_finite(m.samples.data(), "sample value");
    }
};

} // namespace

const EffectModel& validate_model(const EffectModel& model) {
    const std::size_t T = model.treatments.size();
    if (T < 2) throw ValidationError("at least two treatments are required (T >= 2)");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < T; ++i) {
        const auto& t = model.treatments[i];
        if (t.id != i) throw ValidationError("treatment ids must be contiguous 0..T-1");
        if (t.name.empty()) throw ValidationError("empty treatment name");
        if (!seen.insert(t.name).second) throw ValidationError("duplicate treatment name '" + t.name + "'");
    }
    std::visit(Validator{T}, model.distribution);
    return model;
}

std::vector<double> model_means(const EffectModel& model) {
    if (const auto* m = std::get_if<MarginalNormalModel>(&model.distribution)) return m->means;
    if (const auto* m = std::get_if<JointNormalModel>(&model.distribution)) return m->means;
    const auto& s = std::get<EmpiricalSamplesModel>(model.distribution).samples;
    std::vector<double> means(s.cols(), 0.0);
    for (std::size_t r = 0; r < s.rows(); ++r)
        for (std::size_t c = 0; c < s.cols(); ++c) means[c] += s(r, c);
    for (double& m : means) m /= static_cast<double>(s.rows());
    return means;
}

std::vector<double> model_variances(const EffectModel& model) {
    if (const auto* m = std::get_if<MarginalNormalModel>(&model.distribution)) {
        std::vector<double> v;
        for (double sd : m->sds) v.push_back(sd * sd);
        return v;
    }
    if (const auto* m = std::get_if<JointNormalModel>(&model.distribution)) {
        std::vector<double> v;
        for (std::size_t i = 0; i < m->means.size(); ++i) v.push_back(m->covariance(i, i));
        return v;
    }
    const auto& s = std::get<EmpiricalSamplesModel>(model.distribution).samples;
    const auto means = model_means(model);
    std::vector<double> v(s.cols(), 0.0);
    for (std::size_t r = 0; r < s.rows(); ++r)
        for (std::size_t c = 0; c < s.cols(); ++c) v[c] += (s(r, c) - means[c]) * (s(r, c) - means[c]);
    for (double& x : v) x /= static_cast<double>(s.rows() - 1);
    return v;
}

double pair_standard_error(const EffectModel& model, TreatmentId i, TreatmentId j) {
    if (const auto* m = std::get_if<MarginalNormalModel>(&model.distribution))
        return std::sqrt(m->sds[i] * m->sds[i] + m->sds[j] * m->sds[j]);
    if (const auto* m = std::get_if<JointNormalModel>(&model.distribution)) {
        const auto& c = m->covariance;
        return std::sqrt(std::max(0.0, c(i, i) + c(j, j) - 2.0 * c(i, j)));
    }
    throw ValidationError("pairwise standard error requires a normal model");
}

Sampler::Sampler(const EffectModel& model, std::uint64_t seed) : seed_(seed) {
    if (const auto* m = std::get_if<MarginalNormalModel>(&model.distribution)) {
        kind_ = Kind::marginal;
        means_ = m->means;
        sds_ = m->sds;
    } else if (const auto* m = std::get_if<JointNormalModel>(&model.distribution)) {
        kind_ = Kind::joint;
        means_ = m->means;
        factor_ = psd_cholesky(m->covariance);
    } else {
        kind_ = Kind::empirical;
        samples_ = &std::get<EmpiricalSamplesModel>(model.distribution).samples;
        if (samples_->rows() == 0) throw ValidationError("empty empirical sample matrix");
        means_.assign(samples_->cols(), 0.0);
    }
}

void Sampler::draw(std::uint64_t k, std::span<double> out) const {
    const std::size_t T = means_.size();
    switch (kind_) {
    case Kind::marginal: {
        const auto s = draw_stream(seed_, StreamDomain::sampling, k);
        for (std::size_t j = 0; j < T; ++j) out[j] = means_[j] + sds_[j] * s.normal(j);
        break;
    }
    case Kind::joint: {
        const auto s = draw_stream(seed_, StreamDomain::sampling, k);
        // out doubles as storage for the standard normals; L is lower
        // triangular so filling from the last row keeps z_j intact until used.
        for (std::size_t j = 0; j < T; ++j) out[j] = s.normal(j);
        for (std::size_t i = T; i-- > 0;) {
            double acc = means_[i];
            for (std::size_t j = 0; j <= i; ++j) acc += factor_(i, j) * out[j];
            out[i] = acc;
        }
        break;
    }
    case Kind::empirical: {
        const auto s = draw_stream(seed_, StreamDomain::resampling, k);
        const auto row = samples_->row(s.below(0, samples_->rows()));
        std::copy(row.begin(), row.end(), out.begin());
        break;
    }
    }
}

Matrix draw_samples(const EffectModel& model, std::size_t n_draws, std::uint64_t seed) {
    if (n_draws == 0) throw ValidationError("n_draws must be positive");
    const Sampler sampler(model, seed);
    Matrix out(n_draws, model.size());
    const auto n = static_cast<std::int64_t>(n_draws);
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n; ++k) sampler.draw(static_cast<std::uint64_t>(k), out.row(k));
    return out;
}

EffectModel to_canonical_direction(const EffectModel& model) {
    if (model.direction == OutcomeDirection::smaller_better) return model;
    EffectModel out = model;
    out.direction = OutcomeDirection::smaller_better;
    std::visit(
        [](auto& d) {
            using D = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<D, EmpiricalSamplesModel>) {
                for (double& x : d.samples.data()) x = -x;
            } else {
                for (double& x : d.means) x = -x;
            }
        },
        out.distribution);
    return out;
}

RelativeEffects relative_effects(const EffectModel& model, TreatmentId reference) {
    if (reference >= model.size())
        throw ValidationError("unknown reference treatment id " + std::to_string(reference));
    const auto means = model_means(model);
    RelativeEffects out;
    out.reference = reference;
    for (std::size_t i = 0; i < means.size(); ++i)
        out.differences.push_back(i == reference ? 0.0 : means[i] - means[reference]);
    if (model.is_normal()) {
        std::vector<double> se;
        for (std::size_t i = 0; i < means.size(); ++i)
            se.push_back(i == reference ? 0.0 : pair_standard_error(model, i, reference));
        out.standard_errors = std::move(se);
    }
    return out;
}

} // namespace rankq
