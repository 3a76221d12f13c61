#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fdcv {

/**
 * Stationary AR(p) model X_t = phi_1 X_{t-1} + ... + phi_p X_{t-p} + e_t,
 * Var(e_t) = sigma2. The coefficient and partial-autocorrelation vectors are
 * kept together and always agree under the Durbin-Levinson map.
 */
class ArModel {
public:
    ArModel() = default;

    /// Throws std::invalid_argument if any |pacf_k| >= 1 or sigma2 <= 0.
    static ArModel from_pacf(std::vector<double> pacf, double sigma2);
    /// Throws std::domain_error when the coefficients are not stationary.
    static ArModel from_coefficients(std::vector<double> phi, double sigma2);

    [[nodiscard]] std::size_t order() const noexcept { return phi_.size(); }
    [[nodiscard]] const std::vector<double>& phi() const noexcept { return phi_; }
    [[nodiscard]] const std::vector<double>& pacf() const noexcept { return pacf_; }
    [[nodiscard]] double sigma2() const noexcept { return sigma2_; }

    /// Long-run variance sigma2 / (1 - sum phi)^2 = 2 pi f(0).
    [[nodiscard]] double long_run_variance() const;

private:
    std::vector<double> phi_;
    std::vector<double> pacf_;
    double sigma2_ = 1.0;
};

/// Durbin-Levinson step-up: partial autocorrelations -> AR coefficients.
[[nodiscard]] std::vector<double> pacf_to_ar(std::span<const double> pacf);

/// Step-down inverse. Throws std::domain_error naming the level k at which
/// |phi_kk| >= 1 (non-stationary input).
[[nodiscard]] std::vector<double> ar_to_pacf(std::span<const double> phi);

/**
 * Every intermediate predictor of the Durbin-Levinson recursion.
 *
 * coefficients[k] holds phi_{k,1..k} (coefficients[0] is empty) and
 * variance_ratio[k] = Var(order-k prediction error) / sigma2 for k = 0..p,
 * so variance_ratio[p] = 1 and variance_ratio[0] = c_0 / sigma2.
 */
struct PredictionLadder {
    std::vector<std::vector<double>> coefficients;
    std::vector<double> variance_ratio;
};

[[nodiscard]] PredictionLadder prediction_ladder(std::span<const double> pacf);

/// Burg estimate of order p for a caller-demeaned series. Reflection
/// coefficients are kept strictly inside (-1, 1). Throws DataError on a
/// zero-variance series and std::invalid_argument when 2p >= n.
[[nodiscard]] ArModel burg_fit(std::span<const double> x, std::size_t order);

/// Autocovariances c_0..c_max_lag implied by the model (sigma2-scaled).
[[nodiscard]] std::vector<double> theoretical_acvf(const ArModel& model, std::size_t max_lag);

/// sigma2 / (2 pi |1 - sum_k phi_k exp(i omega k)|^2).
[[nodiscard]] double ar_spectrum(const ArModel& model, double omega);

}  // namespace fdcv
