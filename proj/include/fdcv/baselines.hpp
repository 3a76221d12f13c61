#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace fdcv {

enum class BaselineMethod { AndrewsMonahan, NeweyWest };

[[nodiscard]] std::string_view to_string(BaselineMethod m);

struct BaselineResult {
    BaselineMethod method = BaselineMethod::AndrewsMonahan;
    double f0_hat = 0.0;
    double long_run_variance = 0.0;  // 2 pi f0_hat
    double se_hat = 0.0;             // sqrt(S^2 / (n - 1))
    double bandwidth = 0.0;          // QS bandwidth, or the Bartlett lag as a real
    double prewhiten_phi = 0.0;      // AR(1) prewhitening coefficient after clamping
};

inline constexpr double kPrewhitenClamp = 0.97;
inline constexpr std::size_t kMinBaselineLength = 10;

struct NeweyWestOptions {
    // Preliminary lag n0 = floor(lag_multiplier * (n/100)^(2/9)).
    double lag_multiplier = 4.0;
};

/// Quadratic spectral kernel, 1 at x = 0.
[[nodiscard]] double quadratic_spectral_kernel(double x) noexcept;

/// AR(1) prewhitened HAC with the quadratic spectral kernel and the AR(1)
/// plug-in bandwidth 1.3221 (alpha2 n)^(1/5), alpha2 = 4 rho^2 / (1 - rho)^4,
/// where rho is fitted to the prewhitened residuals.
/// Throws DataError for n < 10 or a constant series.
[[nodiscard]] BaselineResult am_pw_estimate(std::span<const double> data);

/// AR(1) prewhitened HAC with Bartlett weights and the nonparametric bandwidth
/// 1.1447 ((s1/s0)^2 n)^(1/3). Throws DataError for n < 10, a constant series,
/// or s0 = 0.
[[nodiscard]] BaselineResult nw_pw_estimate(std::span<const double> data,
                                            const NeweyWestOptions& options = {});

}  // namespace fdcv
