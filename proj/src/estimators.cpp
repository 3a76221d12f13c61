#include "fdcv/estimators.hpp"

#include "fdcv/error.hpp"
#include "fdcv/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fdcv {

std::string CandidateSpec::label() const
{
    return (is_ar() ? "AR(" : "PZ(") + std::to_string(parameter) + ")";
}

double parzen_kernel(double x) noexcept
{
    const double a = std::abs(x);
    if (a <= 0.5) return 1.0 - 6.0 * a * a + 6.0 * a * a * a;
    if (a <= 1.0) {
        const double b = 1.0 - a;
        return 2.0 * b * b * b;
    }
    return 0.0;
}

namespace {

SpectralEstimator::ParzenFit parzen_fit(std::span<const double> data, std::size_t h)
{
    if (h < 1 || h >= data.size()) {
        throw std::invalid_argument("truncation point " + std::to_string(h) + " outside 1.."
                                    + std::to_string(data.size() - 1));
    }
    SpectralEstimator::ParzenFit fit;
    fit.truncation = h;
    fit.weighted_acov = sample_autocovariance(data, h);
    for (std::size_t r = 0; r <= h; ++r) {
        fit.weighted_acov[r] *= parzen_kernel(static_cast<double>(r) / static_cast<double>(h));
    }
    return fit;
}

double evaluate_parzen(const SpectralEstimator::ParzenFit& fit, double omega)
{
    double s = fit.weighted_acov[0];
    for (std::size_t r = 1; r < fit.weighted_acov.size(); ++r) {
        s += 2.0 * fit.weighted_acov[r] * std::cos(omega * static_cast<double>(r));
    }
    return s / (2.0 * std::numbers::pi);
}

}  // namespace

double lag_weights_estimate(std::span<const double> data, std::size_t h, double omega)
{
    return evaluate_parzen(parzen_fit(data, h), omega);
}

SpectralEstimator::SpectralEstimator(CandidateSpec spec, ArModel model)
    : spec_(spec), fit_(std::move(model))
{
}

SpectralEstimator::SpectralEstimator(CandidateSpec spec, ParzenFit fit)
    : spec_(spec), fit_(std::move(fit))
{
}

double SpectralEstimator::evaluate(double omega) const
{
    if (const auto* model = std::get_if<ArModel>(&fit_)) return ar_spectrum(*model, omega);
    return evaluate_parzen(std::get<ParzenFit>(fit_), omega);
}

SpectralEstimator fit_candidate(const CandidateSpec& spec, std::span<const double> data,
                                const RemlOptions& reml)
{
    if (data.size() < kMinSeriesLength) throw DataError("candidate fit needs at least 8 values");
    if (spec.is_ar()) return {spec, reml_fit(data, spec.parameter, reml).model};
    return {spec, parzen_fit(data, spec.parameter)};
}

std::size_t max_truncation(std::size_t n)
{
    const double m = 4.0 * std::pow(static_cast<double>(n) / 100.0, 2.0 / 9.0);
    return static_cast<std::size_t>(std::floor(m + 1e-12));
}

std::string_view to_string(Restriction r)
{
    switch (r) {
    case Restriction::All: return "all";
    case Restriction::ArOnly: return "ar-only";
    case Restriction::ParzenOnly: return "parzen-only";
    }
    return "all";
}

Restriction parse_restriction(std::string_view text)
{
    if (text == "all") return Restriction::All;
    if (text == "ar-only") return Restriction::ArOnly;
    if (text == "parzen-only") return Restriction::ParzenOnly;
    throw ConfigError("unknown restriction '" + std::string(text)
                      + "' (expected all, ar-only or parzen-only)");
}

CandidateClass CandidateClass::for_length(std::size_t n, std::size_t max_ar_order,
                                          std::optional<std::size_t> parzen_max)
{
    CandidateClass out;
    out.max_truncation = parzen_max.value_or(fdcv::max_truncation(n));
    for (std::size_t p = 0; p <= max_ar_order; ++p) out.candidates.push_back(CandidateSpec::ar(p));
    for (std::size_t h = 1; h <= out.max_truncation; ++h) {
        out.candidates.push_back(CandidateSpec::parzen(h));
    }
    return out;
}

bool CandidateClass::allows(const CandidateSpec& spec, Restriction r) const
{
    switch (r) {
    case Restriction::All: return true;
    case Restriction::ArOnly: return spec.is_ar();
    case Restriction::ParzenOnly: return !spec.is_ar();
    }
    return true;
}

CandidateClass CandidateClass::restricted(Restriction r) const
{
    CandidateClass out;
    out.max_truncation = max_truncation;
    for (const auto& c : candidates) {
        if (allows(c, r)) out.candidates.push_back(c);
    }
    return out;
}

}  // namespace fdcv
