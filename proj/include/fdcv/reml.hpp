#pragma once

#include "fdcv/ar_model.hpp"
#include "fdcv/toeplitz.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace fdcv {

/**
 * How the quadratic forms U' S^{-1} V of the restricted likelihood are formed.
 *
 * ToeplitzSolver builds S = Var(X)/sigma2 from the model autocovariances and
 * solves S y = X and S y = 1 (Levinson below SolverOptions::direct_threshold,
 * preconditioned CG above). Innovations uses the exact Durbin-Levinson
 * prediction-error factorization of S^{-1}, which costs O(n p) and is what
 * the Monte Carlo fits use. Both give the same value up to rounding.
 */
enum class QuadFormBackend { ToeplitzSolver, Innovations };

struct RemlOptions {
    QuadFormBackend backend = QuadFormBackend::ToeplitzSolver;
    SolverOptions solver;
    double f_tolerance = 1e-8;
    int evaluations_per_parameter = 500;
    double boundary_margin = 1e-4;  // |pacf| above 1 - margin flags boundary proximity
};

/// Pieces of the restricted likelihood that depend on the data only through
/// quadratic forms in S^{-1}.
struct RemlQuadraticForms {
    double xx = 0.0;           // X' S^{-1} X
    double xw = 0.0;           // X' S^{-1} W
    double ww = 0.0;           // W' S^{-1} W
    double log_det_inv = 0.0;  // log |S^{-1}| = sum_i i log(1 - pacf_i^2)

    /// X'S^{-1}X - (X'S^{-1}W)^2 / W'S^{-1}W.
    [[nodiscard]] double projected() const { return xx - xw * xw / ww; }
};

/// Throws std::invalid_argument if pacf leaves (-1,1)^p or n <= p + 1.
[[nodiscard]] RemlQuadraticForms reml_quadratic_forms(std::span<const double> data,
                                                      std::span<const double> pacf,
                                                      const RemlOptions& options = {});

/// Restricted log-likelihood (additive constant dropped):
///   -(n-1)/2 log sigma2 + 1/2 log(|S^{-1}| / W'S^{-1}W) - Q / (2 sigma2).
[[nodiscard]] double restricted_loglik(std::span<const double> data, std::span<const double> pacf,
                                       double sigma2, const RemlOptions& options = {});

/// Maximizer in sigma2 for fixed pacf: Q / (n - 1). Throws NumericalError when Q <= 0.
[[nodiscard]] double concentrated_sigma2(std::span<const double> data,
                                         std::span<const double> pacf,
                                         const RemlOptions& options = {});

enum class OptimizerStatus { Converged, MaxEvaluations, BoundaryProximal };

[[nodiscard]] std::string_view to_string(OptimizerStatus status);

struct RemlFit {
    ArModel model;
    double loglik = 0.0;
    double start_loglik = 0.0;  // at the Burg starting value
    OptimizerStatus status = OptimizerStatus::Converged;
    int evaluations = 0;
};

/// Maximizes the sigma2-profiled restricted likelihood over pacf in (-1,1)^p
/// via pacf_k = tanh(theta_k), starting from Burg. Order 0 returns the
/// sample variance with divisor n-1. Requires n > 2(p + 1).
[[nodiscard]] RemlFit reml_fit(std::span<const double> data, std::size_t order,
                               const RemlOptions& options = {});

}  // namespace fdcv
