#include "fdcv/selector.hpp"

#include "fdcv/error.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace fdcv {

std::size_t band_size(std::size_t n_tilde, double c)
{
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("band exponent c must lie in (0, 1)");
    // The small offset keeps exact integer powers (e.g. 32^0.8 = 16) from
    // rounding down.
    return static_cast<std::size_t>(
        std::floor(std::pow(static_cast<double>(n_tilde), c) + 1e-9));
}

namespace {

constexpr double kPiSquaredOverSix = std::numbers::pi * std::numbers::pi / 6.0;

struct Band {
    std::size_t size = 0;
    std::vector<std::size_t> frequencies;  // j with I(w_j) > 0
    std::vector<double> log_periodogram;   // log I(w_j) + C, same order
    std::vector<LeaveOneOutSeries> loo;
};

Band prepare_band(const TimeSeries& series, const CvOptions& options)
{
    Band band;
    band.size = band_size(series.n_tilde(), options.c);
    if (band.size < 1) throw DataError("series too short for a cross-validation band");
    const auto I = periodogram(series);
    for (std::size_t j = 1; j <= band.size; ++j) {
        if (I.at(j) > 0.0) {
            band.frequencies.push_back(j);
            band.log_periodogram.push_back(std::log(I.at(j)) + kEulerGamma);
        }
    }
    if (band.frequencies.empty()) {
        throw DataError("every periodogram ordinate in the cross-validation band is zero");
    }
    band.loo.reserve(band.frequencies.size());
    for (std::size_t j : band.frequencies) {
        band.loo.push_back(options.fast_leave_one_out ? leave_one_out_series_fast(series, j)
                                                      : leave_one_out_series(series, j));
    }
    return band;
}

// One summand of CV; nullopt disqualifies the candidate.
std::optional<double> cv_term(const CandidateSpec& candidate, const Band& band, std::size_t slot,
                              std::size_t n, const CvOptions& options)
{
    try {
        const auto est = fit_candidate(candidate, band.loo[slot].values, options.reml);
        const double f = est.evaluate(fourier_frequency(band.frequencies[slot], n));
        if (!(f > 0.0) || !std::isfinite(f)) return std::nullopt;
        const double d = std::log(f) - band.log_periodogram[slot];
        return d * d - kPiSquaredOverSix;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::vector<CvScore> reduce(std::span<const CandidateSpec> candidates, const Band& band,
                            const std::vector<std::optional<double>>& terms)
{
    const std::size_t width = band.frequencies.size();
    std::vector<CvScore> scores;
    scores.reserve(candidates.size());
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        CvScore s;
        s.candidate = candidates[ci];
        s.band_size = band.size;
        s.terms_used = width;
        double sum = 0.0;
        for (std::size_t slot = 0; slot < width; ++slot) {
            const auto& term = terms[ci * width + slot];
            if (!term) {
                s.disqualified = true;
                s.reason = "fit failed or non-positive estimate at j="
                           + std::to_string(band.frequencies[slot]);
                break;
            }
            sum += *term;
        }
        s.score = s.disqualified ? std::numeric_limits<double>::infinity()
                                 : sum / static_cast<double>(width);
        scores.push_back(std::move(s));
    }
    return scores;
}

std::vector<CvScore> score_all(const TimeSeries& series, std::span<const CandidateSpec> candidates,
                               const CvOptions& options, bool parallel)
{
    const Band band = prepare_band(series, options);
    const std::size_t width = band.frequencies.size();
    const std::size_t total = candidates.size() * width;
    const std::size_t n = series.size();
    std::vector<std::optional<double>> terms(total);
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(total); ++k) {
            const auto idx = static_cast<std::size_t>(k);
            terms[idx] = cv_term(candidates[idx / width], band, idx % width, n, options);
        }
    } else {
        for (std::size_t idx = 0; idx < total; ++idx) {
            terms[idx] = cv_term(candidates[idx / width], band, idx % width, n, options);
        }
    }
    return reduce(candidates, band, terms);
}

}  // namespace

std::vector<CvScore> cv_scores(const TimeSeries& series, std::span<const CandidateSpec> candidates,
                               const CvOptions& options)
{
    return score_all(series, candidates, options, options.parallel);
}

std::vector<CvScore> cv_scores_serial(const TimeSeries& series,
                                      std::span<const CandidateSpec> candidates,
                                      const CvOptions& options)
{
    return score_all(series, candidates, options, false);
}

CvScore cv_score(const CandidateSpec& candidate, const TimeSeries& series,
                 const CvOptions& options)
{
    return cv_scores_serial(series, std::span(&candidate, 1), options).front();
}

double hac_standard_error(double f0_hat, std::size_t n)
{
    if (!(f0_hat > 0.0)) throw std::invalid_argument("f(0) estimate must be positive");
    if (n < 2) throw std::invalid_argument("standard error needs n >= 2");
    return std::sqrt(2.0 * std::numbers::pi * f0_hat / static_cast<double>(n - 1));
}

ConfidenceInterval normal_interval(double mean, double se, double level)
{
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("level must lie in (0, 1)");
    const boost::math::normal standard;
    const double z = boost::math::quantile(standard, 0.5 + 0.5 * level);
    return {level, mean - z * se, mean + z * se};
}

FdcvResult select_from_scores(const TimeSeries& series, std::span<const CvScore> scores,
                              Restriction restriction, const CvOptions& options)
{
    const CandidateClass everything;
    std::vector<CvScore> allowed;
    const CvScore* best = nullptr;
    for (const auto& s : scores) {
        if (!everything.allows(s.candidate, restriction)) continue;
        allowed.push_back(s);
    }
    for (const auto& s : allowed) {
        if (s.disqualified) continue;
        if (best == nullptr || s.score < best->score) best = &s;
    }
    if (best == nullptr) throw NumericalError("every candidate was disqualified");

    const auto demeaned = series.demeaned();
    auto selected = fit_candidate(best->candidate, demeaned, options.reml);
    const double f0 = selected.evaluate(0.0);
    if (!(f0 > 0.0) || !std::isfinite(f0)) {
        throw NumericalError("selected estimator " + best->candidate.label()
                             + " gives a non-positive f(0)");
    }
    FdcvResult result{std::move(selected), std::move(allowed), 0, 0.0, 0.0, 0.0, 0.0, 0.0, {}};
    result.n = series.size();
    result.c = options.c;
    result.mean = series.mean();
    result.f0_hat = f0;
    result.long_run_variance = 2.0 * std::numbers::pi * f0;
    result.se_hat = hac_standard_error(f0, series.size());
    for (double level : kNominalLevels) {
        result.intervals.push_back(normal_interval(result.mean, result.se_hat, level));
    }
    return result;
}

FdcvResult select(const TimeSeries& series, const CandidateClass& candidates,
                  Restriction restriction, const CvOptions& options)
{
    const auto allowed = candidates.restricted(restriction);
    if (allowed.candidates.empty()) throw std::invalid_argument("candidate class is empty");
    const auto scores = cv_scores(series, allowed.candidates, options);
    return select_from_scores(series, scores, restriction, options);
}

}  // namespace fdcv
