#pragma once

#include "fdcv/spectral.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fdcv {

/**
 * Symmetric Toeplitz matrix given by its first column t_0..t_{n-1}.
 *
 * Products are formed through the size-2n circulant embedding
 * [t_0, ..., t_{n-1}, 0, t_{n-1}, ..., t_1], whose spectrum is computed once
 * at construction. The embedding need not be positive definite.
 */
class ToeplitzOperator {
public:
    /// Throws std::invalid_argument when empty or t_0 <= 0.
    explicit ToeplitzOperator(std::vector<double> first_column);

    [[nodiscard]] std::size_t size() const noexcept { return column_.size(); }
    [[nodiscard]] const std::vector<double>& first_column() const noexcept { return column_; }

    /// Exact product T v in O(n log n).
    [[nodiscard]] std::vector<double> apply(std::span<const double> v) const;

private:
    std::vector<double> column_;
    std::vector<cplx> embedded_spectrum_;
};

[[nodiscard]] std::vector<double> toeplitz_matvec(const ToeplitzOperator& op,
                                                  std::span<const double> v);

/// Circulant approximation C, stored as its eigenvalues (DFT of its first column).
class CirculantPreconditioner {
public:
    /// Throws NumericalError if any eigenvalue is not strictly positive.
    explicit CirculantPreconditioner(std::vector<double> first_column);

    [[nodiscard]] const std::vector<double>& first_column() const noexcept { return column_; }
    [[nodiscard]] const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }

    /// C^{-1} r via FFT diagonalization.
    [[nodiscard]] std::vector<double> apply_inverse(std::span<const double> r) const;

private:
    std::vector<double> column_;
    std::vector<double> eigenvalues_;
};

/// T. Chan's optimal circulant: c_k = ((n-k) t_k + k t_{n-k}) / n, the
/// Frobenius-nearest circulant to the Toeplitz operator.
[[nodiscard]] CirculantPreconditioner tchan_preconditioner(const ToeplitzOperator& op);

enum class Preconditioning { TChan, None };

struct PcgOptions {
    double tolerance = 1e-9;     // on ||b - T x|| / ||b||
    int max_iterations = 200;
    int residual_refresh = 10;   // recompute the true residual this often
    Preconditioning preconditioning = Preconditioning::TChan;
};

struct PcgReport {
    std::vector<double> solution;
    int iterations = 0;
    double final_relative_residual = 0.0;
    bool used_direct_fallback = false;
};

/// Thrown by pcg_solve when max_iterations is hit; carries the best iterate.
class PcgNotConverged : public std::runtime_error {
public:
    PcgNotConverged(PcgReport best, const std::string& what)
        : std::runtime_error(what), best_(std::move(best)) {}
    [[nodiscard]] const PcgReport& best() const noexcept { return best_; }

private:
    PcgReport best_;
};

[[nodiscard]] PcgReport pcg_solve(const ToeplitzOperator& op, std::span<const double> b,
                                  const PcgOptions& options = {});

/// O(n^2) Levinson recursion. Throws NumericalError on a singular leading minor.
[[nodiscard]] std::vector<double> levinson_solve(const ToeplitzOperator& op,
                                                 std::span<const double> b);

struct SolverOptions {
    PcgOptions pcg;
    std::size_t direct_threshold = 128;  // below this size use Levinson directly
};

/// Dispatching solve: Levinson for small systems, otherwise PCG with a
/// transparent Levinson fallback when PCG does not converge.
[[nodiscard]] PcgReport toeplitz_solve(const ToeplitzOperator& op, std::span<const double> b,
                                       const SolverOptions& options = {});

}  // namespace fdcv
