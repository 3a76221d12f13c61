#pragma once

#include "fdcv/estimators.hpp"
#include "fdcv/spectral.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace fdcv {

inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kDefaultBandExponent = 0.8;

struct CvOptions {
    double c = kDefaultBandExponent;
    RemlOptions reml = [] {
        RemlOptions o;
        o.backend = QuadFormBackend::Innovations;
        return o;
    }();
    bool parallel = true;            // OpenMP over (candidate, frequency) pairs
    bool fast_leave_one_out = true;  // rank-two update instead of an inverse FFT
};

struct CvScore {
    CandidateSpec candidate;
    double score = 0.0;          // +inf when disqualified
    std::size_t band_size = 0;   // floor(n_tilde^c)
    std::size_t terms_used = 0;  // band_size minus frequencies with I(w_j) == 0
    bool disqualified = false;
    std::string reason;
};

/// floor(n_tilde^c); throws std::invalid_argument unless c is in (0, 1).
[[nodiscard]] std::size_t band_size(std::size_t n_tilde, double c);

/// CV(f, c) = mean over j <= floor(n_tilde^c) of
///   [log f^{-j}(w_j) - (log I(w_j) + C)]^2 - pi^2/6,
/// where f^{-j} is the candidate refitted on the leave-one-out series.
[[nodiscard]] CvScore cv_score(const CandidateSpec& candidate, const TimeSeries& series,
                               const CvOptions& options = {});

/// Scores for every candidate. Each score depends only on its candidate, so
/// restricting the class never changes surviving scores. Results do not depend
/// on the thread schedule.
[[nodiscard]] std::vector<CvScore> cv_scores(const TimeSeries& series,
                                             std::span<const CandidateSpec> candidates,
                                             const CvOptions& options = {});

/// Single-threaded reference for cv_scores.
[[nodiscard]] std::vector<CvScore> cv_scores_serial(const TimeSeries& series,
                                                    std::span<const CandidateSpec> candidates,
                                                    const CvOptions& options = {});

struct ConfidenceInterval {
    double level = 0.0;
    double lower = 0.0;
    double upper = 0.0;

    [[nodiscard]] bool contains(double value) const { return lower <= value && value <= upper; }
};

inline const std::vector<double> kNominalLevels{0.90, 0.95, 0.99};

struct FdcvResult {
    SpectralEstimator selected;
    std::vector<CvScore> all_scores;  // scores of the candidates allowed by the restriction
    std::size_t n = 0;
    double c = kDefaultBandExponent;
    double mean = 0.0;
    double f0_hat = 0.0;
    double long_run_variance = 0.0;  // 2 pi f0_hat
    double se_hat = 0.0;
    std::vector<ConfidenceInterval> intervals;
};

/// sqrt(2 pi f0 / (n - 1)). Throws std::invalid_argument on f0 <= 0 or n < 2.
[[nodiscard]] double hac_standard_error(double f0_hat, std::size_t n);

/// mean +/- z_{(1+level)/2} se.
[[nodiscard]] ConfidenceInterval normal_interval(double mean, double se, double level);

/// Scores the allowed candidates, picks the minimizer (earliest on ties),
/// refits it on the demeaned series and reports f(0), the standard error of
/// the mean and normal intervals at 90/95/99%. Throws NumericalError when every
/// candidate is disqualified.
[[nodiscard]] FdcvResult select(const TimeSeries& series, const CandidateClass& candidates,
                                Restriction restriction = Restriction::All,
                                const CvOptions& options = {});

/// Selection step only, from precomputed scores (e.g. one scoring pass shared
/// by several restrictions).
[[nodiscard]] FdcvResult select_from_scores(const TimeSeries& series,
                                            std::span<const CvScore> scores,
                                            Restriction restriction,
                                            const CvOptions& options = {});

}  // namespace fdcv
