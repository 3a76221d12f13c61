#include "fdcv/toeplitz.hpp"

#include "fdcv/error.hpp"
#include "fdcv/fft.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace fdcv {

namespace {

double dot(std::span<const double> a, std::span<const double> b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void check_dimension(std::size_t expected, std::size_t got)
{
    if (expected != got) {
        throw std::invalid_argument("dimension mismatch: operator is " + std::to_string(expected)
                                    + ", vector is " + std::to_string(got));
    }
}

std::vector<double> residual(const ToeplitzOperator& op, std::span<const double> b,
                             std::span<const double> x)
{
    auto r = op.apply(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    return r;
}

}  // namespace

ToeplitzOperator::ToeplitzOperator(std::vector<double> first_column)
    : column_(std::move(first_column))
{
    if (column_.empty()) throw std::invalid_argument("empty Toeplitz column");
    if (!(column_[0] > 0.0)) throw std::invalid_argument("Toeplitz diagonal must be positive");
    const std::size_t n = column_.size();
    std::vector<cplx> embed(2 * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) embed[k] = column_[k];
    for (std::size_t k = 1; k < n; ++k) embed[2 * n - k] = column_[k];
    fft::forward_inplace(embed);
    embedded_spectrum_ = std::move(embed);
}

std::vector<double> ToeplitzOperator::apply(std::span<const double> v) const
{
    const std::size_t n = size();
    check_dimension(n, v.size());
    std::vector<cplx> work(2 * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) work[i] = v[i];
    fft::forward_inplace(work);
    for (std::size_t k = 0; k < work.size(); ++k) work[k] *= embedded_spectrum_[k];
    fft::backward_inplace(work);
    const double scale = 1.0 / static_cast<double>(2 * n);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = work[i].real() * scale;
    return out;
}

std::vector<double> toeplitz_matvec(const ToeplitzOperator& op, std::span<const double> v)
{
    return op.apply(v);
}

CirculantPreconditioner::CirculantPreconditioner(std::vector<double> first_column)
    : column_(std::move(first_column))
{
    const auto spectrum = fft::forward(std::span<const double>(column_));
    eigenvalues_.resize(spectrum.size());
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        eigenvalues_[k] = spectrum[k].real();
        if (!(eigenvalues_[k] > 0.0)) {
            throw NumericalError("circulant preconditioner has a non-positive eigenvalue at index "
                                 + std::to_string(k));
        }
    }
}

std::vector<double> CirculantPreconditioner::apply_inverse(std::span<const double> r) const
{
    const std::size_t n = column_.size();
    check_dimension(n, r.size());
    std::vector<cplx> work(r.begin(), r.end());
    fft::forward_inplace(work);
    for (std::size_t k = 0; k < n; ++k) work[k] /= eigenvalues_[k];
    fft::backward_inplace(work);
    std::vector<double> out(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = work[i].real() * scale;
    return out;
}

CirculantPreconditioner tchan_preconditioner(const ToeplitzOperator& op)
{
    const auto& t = op.first_column();
    const std::size_t n = t.size();
    std::vector<double> c(n);
    c[0] = t[0];
    for (std::size_t k = 1; k < n; ++k) {
        c[k] = (static_cast<double>(n - k) * t[k] + static_cast<double>(k) * t[n - k])
               / static_cast<double>(n);
    }
    return CirculantPreconditioner(std::move(c));
}

PcgReport pcg_solve(const ToeplitzOperator& op, std::span<const double> b,
                    const PcgOptions& options)
{
    const std::size_t n = op.size();
    check_dimension(n, b.size());
    if (!(options.tolerance > 0.0 && options.tolerance < 1.0)) {
        throw std::invalid_argument("PCG tolerance must lie in (0, 1)");
    }
    PcgReport report;
    report.solution.assign(n, 0.0);
    const double b_norm = norm2(b);
    if (b_norm == 0.0) return report;

    std::optional<CirculantPreconditioner> precond;
    if (options.preconditioning == Preconditioning::TChan) precond = tchan_preconditioner(op);
    auto precondition = [&](std::span<const double> r) {
        return precond ? precond->apply_inverse(r) : std::vector<double>(r.begin(), r.end());
    };

    auto& x = report.solution;
    std::vector<double> r(b.begin(), b.end());
    auto z = precondition(r);
    auto p = z;
    double rz = dot(r, z);
    report.final_relative_residual = 1.0;

    for (int it = 1; it <= options.max_iterations; ++it) {
        const auto q = op.apply(p);
        const double alpha = rz / dot(p, q);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        report.iterations = it;
        double rel = norm2(r) / b_norm;
        const bool refresh = options.residual_refresh > 0 && it % options.residual_refresh == 0;
        if (rel <= options.tolerance || refresh) {
            r = residual(op, b, x);
            rel = norm2(r) / b_norm;
        }
        report.final_relative_residual = rel;
        if (rel <= options.tolerance) return report;

        z = precondition(r);
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw PcgNotConverged(std::move(report),
                          "PCG did not reach tolerance within "
                              + std::to_string(options.max_iterations) + " iterations");
}

std::vector<double> levinson_solve(const ToeplitzOperator& op, std::span<const double> b)
{
    const auto& t = op.first_column();
    const std::size_t n = t.size();
    check_dimension(n, b.size());
    const double t0 = t[0];

    // Golub & Van Loan's Levinson algorithm on the unit-diagonal system.
    std::vector<double> x(n), y(n), scratch(n);
    auto r = [&](std::size_t k) { return t[k] / t0; };  // r(1..n-1)
    x[0] = b[0] / t0;
    if (n == 1) return x;
    y[0] = -r(1);
    double beta = 1.0;
    double alpha = -r(1);
    for (std::size_t k = 1; k < n; ++k) {
        beta *= 1.0 - alpha * alpha;
        if (!(beta > 0.0)) {
            throw NumericalError("Levinson recursion hit a singular leading minor of order "
                                 + std::to_string(k + 1));
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < k; ++i) acc += r(i + 1) * x[k - 1 - i];
        const double mu = (b[k] / t0 - acc) / beta;
        for (std::size_t i = 0; i < k; ++i) scratch[i] = x[i] + mu * y[k - 1 - i];
        std::copy_n(scratch.begin(), k, x.begin());
        x[k] = mu;
        if (k + 1 < n) {
            acc = 0.0;
            for (std::size_t i = 0; i < k; ++i) acc += r(i + 1) * y[k - 1 - i];
            alpha = (-r(k + 1) - acc) / beta;
            for (std::size_t i = 0; i < k; ++i) scratch[i] = y[i] + alpha * y[k - 1 - i];
            std::copy_n(scratch.begin(), k, y.begin());
            y[k] = alpha;
        }
    }
    return x;
}

PcgReport toeplitz_solve(const ToeplitzOperator& op, std::span<const double> b,
                         const SolverOptions& options)
{
    if (op.size() < options.direct_threshold) {
        PcgReport report;
        report.solution = levinson_solve(op, b);
        report.used_direct_fallback = true;
        return report;
    }
    try {
        return pcg_solve(op, b, options.pcg);
    } catch (const PcgNotConverged& stalled) {
        PcgReport report = stalled.best();
        report.solution = levinson_solve(op, b);
        report.used_direct_fallback = true;
        const auto r = residual(op, b, report.solution);
        report.final_relative_residual = norm2(r) / std::max(norm2(b), 1e-300);
        return report;
    }
}

}  // namespace fdcv
