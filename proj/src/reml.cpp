#include "fdcv/reml.hpp"

#include "fdcv/error.hpp"
#include "fdcv/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fdcv {

namespace {

// Fits stay inside this box so the restricted likelihood remains well defined.
constexpr double kPacfLimit = 1.0 - 1e-6;

std::vector<double> centered(std::span<const double> data)
{
    const double mean = std::accumulate(data.begin(), data.end(), 0.0)
                        / static_cast<double>(data.size());
    std::vector<double> out(data.begin(), data.end());
    for (double& v : out) v -= mean;
    return out;
}

double log_det_inverse(std::span<const double> pacf)
{
    double s = 0.0;
    for (std::size_t i = 0; i < pacf.size(); ++i) {
        s += static_cast<double>(i + 1) * std::log1p(-pacf[i] * pacf[i]);
    }
    return s;
}

RemlQuadraticForms forms_by_innovations(std::span<const double> x, std::span<const double> pacf)
{
    const std::size_t n = x.size();
    const std::size_t p = pacf.size();
    const auto ladder = prediction_ladder(pacf);
    RemlQuadraticForms q;
    for (std::size_t t = 0; t < std::min(p, n); ++t) {
        const auto& a = ladder.coefficients[t];
        double ex = x[t];
        double ew = 1.0;
        for (std::size_t i = 1; i <= t; ++i) {
            ex -= a[i - 1] * x[t - i];
            ew -= a[i - 1];
        }
        const double v = ladder.variance_ratio[t];
        q.xx += ex * ex / v;
        q.xw += ex * ew / v;
        q.ww += ew * ew / v;
    }
    const auto& a = ladder.coefficients[p];
    const double ew = 1.0 - std::accumulate(a.begin(), a.end(), 0.0);
    double sxx = 0.0;
    double sx = 0.0;
    for (std::size_t t = p; t < n; ++t) {
        double ex = x[t];
        for (std::size_t i = 1; i <= p; ++i) ex -= a[i - 1] * x[t - i];
        sxx += ex * ex;
        sx += ex;
    }
    q.xx += sxx;
    q.xw += sx * ew;
    q.ww += static_cast<double>(n - p) * ew * ew;
    q.log_det_inv = log_det_inverse(pacf);
    return q;
}

RemlQuadraticForms forms_by_solver(std::span<const double> x, std::span<const double> pacf,
                                   const SolverOptions& solver)
{
    const std::size_t n = x.size();
    const auto model = ArModel::from_pacf(std::vector<double>(pacf.begin(), pacf.end()), 1.0);
    const ToeplitzOperator op(theoretical_acvf(model, n - 1));
    const std::vector<double> ones(n, 1.0);
    const auto rx = toeplitz_solve(op, x, solver);
    const auto rw = toeplitz_solve(op, ones, solver);
    const auto& sx = rx.solution;
    const auto& sw = rw.solution;
    RemlQuadraticForms q;
    const bool iterative = (rx.iterations > 0 && !rx.used_direct_fallback)
                           || (rw.iterations > 0 && !rw.used_direct_fallback);
    if (!iterative) {
        for (std::size_t t = 0; t < n; ++t) {
            q.xx += x[t] * sx[t];
            q.xw += x[t] * sw[t];
            q.ww += sw[t];
        }
    } else {
        // u'y_v + v'y_u - y_u'T y_v: error is the product of the two solve
        // errors instead of linear in one, so the 1e-9 CG residual does not
        // show up as objective noise in the optimizer.
        const auto tx = op.apply(sx);
        const auto tw = op.apply(sw);
        for (std::size_t t = 0; t < n; ++t) {
            q.xx += 2.0 * x[t] * sx[t] - sx[t] * tx[t];
            q.xw += x[t] * sw[t] + sx[t] - sx[t] * tw[t];
            q.ww += 2.0 * sw[t] - sw[t] * tw[t];
        }
    }
    q.log_det_inv = log_det_inverse(pacf);
    return q;
}

RemlQuadraticForms forms_centered(std::span<const double> x, std::span<const double> pacf,
                                  const RemlOptions& options)
{
    return options.backend == QuadFormBackend::Innovations
               ? forms_by_innovations(x, pacf)
               : forms_by_solver(x, pacf, options.solver);
}

double profiled_loglik(const RemlQuadraticForms& q, std::size_t n)
{
    const double m = static_cast<double>(n - 1);
    const double sigma2 = q.projected() / m;
    if (!(sigma2 > 0.0)) return -std::numeric_limits<double>::infinity();
    return -0.5 * m * (std::log(sigma2) + 1.0) + 0.5 * (q.log_det_inv - std::log(q.ww));
}

}  // namespace

RemlQuadraticForms reml_quadratic_forms(std::span<const double> data,
                                        std::span<const double> pacf,
                                        const RemlOptions& options)
{
    if (data.size() <= pacf.size() + 1) {
        throw std::invalid_argument("restricted likelihood needs n > p + 1");
    }
    for (double v : pacf) {
        if (!(std::abs(v) < 1.0)) throw std::invalid_argument("pacf on or outside the unit box");
    }
    // The restricted likelihood is invariant to adding a constant, so the
    // forms are evaluated on centered data.
    return forms_centered(centered(data), pacf, options);
}

double restricted_loglik(std::span<const double> data, std::span<const double> pacf,
                         double sigma2, const RemlOptions& options)
{
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
    const auto q = reml_quadratic_forms(data, pacf, options);
    const double m = static_cast<double>(data.size() - 1);
    return -0.5 * m * std::log(sigma2) + 0.5 * (q.log_det_inv - std::log(q.ww))
           - q.projected() / (2.0 * sigma2);
}

double concentrated_sigma2(std::span<const double> data, std::span<const double> pacf,
                           const RemlOptions& options)
{
    const auto q = reml_quadratic_forms(data, pacf, options);
    const double projected = q.projected();
    if (!(projected > 0.0)) {
        throw NumericalError("restricted quadratic form is not positive");
    }
    return projected / static_cast<double>(data.size() - 1);
}

std::string_view to_string(OptimizerStatus status)
{
    switch (status) {
    case OptimizerStatus::Converged: return "converged";
    case OptimizerStatus::MaxEvaluations: return "max-evals";
    case OptimizerStatus::BoundaryProximal: return "boundary-proximal";
    }
    return "unknown";
}

RemlFit reml_fit(std::span<const double> data, std::size_t order, const RemlOptions& options)
{
    const std::size_t n = data.size();
    if (n <= 2 * (order + 1)) {
        throw std::invalid_argument("REML order " + std::to_string(order) + " needs more than "
                                    + std::to_string(2 * (order + 1)) + " observations");
    }
    const auto x = centered(data);
    if (order == 0) {
        double ss = 0.0;
        for (double v : x) ss += v * v;
        if (!(ss > 0.0)) throw DataError("REML fit on a constant series");
        const double sigma2 = ss / static_cast<double>(n - 1);
        RemlFit fit;
        fit.model = ArModel::from_pacf({}, sigma2);
        fit.loglik = restricted_loglik(x, {}, sigma2, options);
        fit.start_loglik = fit.loglik;
        return fit;
    }

    auto burg = burg_fit(x, order);
    std::vector<double> theta0(order);
    for (std::size_t k = 0; k < order; ++k) {
        theta0[k] = std::atanh(std::clamp(burg.pacf()[k], -kPacfLimit, kPacfLimit));
    }

    std::vector<double> pacf(order);
    auto objective = [&](std::span<const double> theta) {
        for (std::size_t k = 0; k < order; ++k) {
            pacf[k] = std::tanh(theta[k]);
            if (!(std::abs(pacf[k]) <= kPacfLimit)) return std::numeric_limits<double>::infinity();
        }
        return -profiled_loglik(forms_centered(x, pacf, options), n);
    };

    SimplexOptions simplex;
    simplex.f_tolerance = options.f_tolerance;
    simplex.max_evaluations = options.evaluations_per_parameter * static_cast<int>(order);
    const double start_value = objective(theta0);
    const auto best = nelder_mead(objective, theta0, simplex);
    if (!std::isfinite(best.value)) {
        throw NumericalError("restricted likelihood is not finite anywhere near the Burg start");
    }

    for (std::size_t k = 0; k < order; ++k) pacf[k] = std::tanh(best.argmin[k]);
    const double sigma2 = concentrated_sigma2(x, pacf, options);

    RemlFit fit;
    fit.model = ArModel::from_pacf(pacf, sigma2);
    fit.loglik = -best.value;
    fit.start_loglik = -start_value;
    fit.evaluations = best.evaluations + 1;
    fit.status = best.converged ? OptimizerStatus::Converged : OptimizerStatus::MaxEvaluations;
    for (double v : pacf) {
        if (std::abs(v) > 1.0 - options.boundary_margin) fit.status = OptimizerStatus::BoundaryProximal;
    }
    return fit;
}

}  // namespace fdcv
