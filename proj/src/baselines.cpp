#include "fdcv/baselines.hpp"

#include "fdcv/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

namespace fdcv {

std::string_view to_string(BaselineMethod m)
{
    return m == BaselineMethod::AndrewsMonahan ? "AM-PW" : "NW-PW";
}

double quadratic_spectral_kernel(double x) noexcept
{
    if (x == 0.0) return 1.0;
    const double z = 6.0 * std::numbers::pi * x / 5.0;
    return 25.0 / (12.0 * std::numbers::pi * std::numbers::pi * x * x)
           * (std::sin(z) / z - std::cos(z));
}

namespace {

struct Prewhitened {
    std::size_t n = 0;  // original length
    double rho = 0.0;
    std::vector<double> residuals;  // length n - 1
};

Prewhitened prewhiten(std::span<const double> data)
{
    const std::size_t n = data.size();
    if (n < kMinBaselineLength) throw DataError("baseline HAC needs at least 10 values");
    const double mean = std::accumulate(data.begin(), data.end(), 0.0) / static_cast<double>(n);
    std::vector<double> u(data.begin(), data.end());
    for (double& v : u) v -= mean;

    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        num += u[t] * u[t - 1];
        den += u[t - 1] * u[t - 1];
    }
    if (!(den > 0.0)) throw DataError("baseline HAC on a constant series");

    Prewhitened pw;
    pw.n = n;
    pw.rho = std::clamp(num / den, -kPrewhitenClamp, kPrewhitenClamp);
    pw.residuals.resize(n - 1);
    for (std::size_t t = 1; t < n; ++t) pw.residuals[t - 1] = u[t] - pw.rho * u[t - 1];
    return pw;
}

double lag_product(const std::vector<double>& e, std::size_t j)
{
    double s = 0.0;
    for (std::size_t t = 0; t + j < e.size(); ++t) s += e[t] * e[t + j];
    return s;
}

// Recolored long-run variance from kernel weights w_0..w_L on the residuals.
BaselineResult finish(BaselineMethod method, const Prewhitened& pw,
                      const std::vector<double>& weights, double bandwidth)
{
    double utu = weights[0] * lag_product(pw.residuals, 0);
    for (std::size_t j = 1; j < weights.size() && j < pw.residuals.size(); ++j) {
        utu += 2.0 * weights[j] * lag_product(pw.residuals, j);
    }
    const double recolor = (1.0 - pw.rho) * (1.0 - pw.rho);
    const double s2 = utu / (static_cast<double>(pw.n) * recolor);
    if (!(s2 > 0.0) || !std::isfinite(s2)) {
        throw NumericalError(std::string(to_string(method)) + " long-run variance is not positive");
    }
    BaselineResult r;
    r.method = method;
    r.long_run_variance = s2;
    r.f0_hat = s2 / (2.0 * std::numbers::pi);
    r.se_hat = std::sqrt(s2 / static_cast<double>(pw.n - 1));
    r.bandwidth = bandwidth;
    r.prewhiten_phi = pw.rho;
    return r;
}

// OLS slope of e_t on (1, e_{t-1}) after removing the overall mean.
double ar1_with_intercept(const std::vector<double>& e)
{
    const double mean = std::accumulate(e.begin(), e.end(), 0.0) / static_cast<double>(e.size());
    const std::size_t m = e.size() - 1;
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t t = 1; t < e.size(); ++t) {
        mx += e[t - 1] - mean;
        my += e[t] - mean;
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t t = 1; t < e.size(); ++t) {
        const double x = e[t - 1] - mean - mx;
        sxy += x * (e[t] - mean - my);
        sxx += x * x;
    }
    if (!(sxx > 0.0)) throw DataError("prewhitened residuals are constant");
    return sxy / sxx;
}

}  // namespace

BaselineResult am_pw_estimate(std::span<const double> data)
{
    const auto pw = prewhiten(data);
    const double rho = ar1_with_intercept(pw.residuals);
    const double n_pw = static_cast<double>(pw.residuals.size());
    const double alpha2 = 4.0 * rho * rho / std::pow(1.0 - rho, 4);
    const double bandwidth = 1.3221 * std::pow(alpha2 * n_pw, 0.2);

    std::vector<double> weights{1.0};
    std::size_t last = 0;
    if (bandwidth > 0.0) {
        for (std::size_t j = 1; j < pw.residuals.size(); ++j) {
            const double w = quadratic_spectral_kernel(static_cast<double>(j) / bandwidth);
            weights.push_back(w);
            if (std::abs(w) > 1e-7) last = j;
        }
    }
    weights.resize(last + 1);
    return finish(BaselineMethod::AndrewsMonahan, pw, weights, bandwidth);
}

BaselineResult nw_pw_estimate(std::span<const double> data, const NeweyWestOptions& options)
{
    const auto pw = prewhiten(data);
    const auto& e = pw.residuals;
    const std::size_t n_pw = e.size();
    const auto n0 = static_cast<std::size_t>(std::floor(
        options.lag_multiplier * std::pow(static_cast<double>(n_pw) / 100.0, 2.0 / 9.0)));

    double s0 = lag_product(e, 0) / static_cast<double>(n_pw);
    double s1 = 0.0;
    for (std::size_t j = 1; j <= n0 && j < n_pw; ++j) {
        const double sigma = lag_product(e, j) / static_cast<double>(n_pw);
        s0 += 2.0 * sigma;
        s1 += 2.0 * static_cast<double>(j) * sigma;
    }
    if (s0 == 0.0) throw DataError("Newey-West bandwidth undefined: s0 = 0");
    const double bandwidth =
        1.1447 * std::cbrt((s1 / s0) * (s1 / s0) * static_cast<double>(n_pw));
    const auto lag = std::min(static_cast<std::size_t>(std::floor(bandwidth)), n_pw - 1);

    std::vector<double> weights(lag + 1);
    for (std::size_t j = 0; j <= lag; ++j) {
        weights[j] = 1.0 - static_cast<double>(j) / static_cast<double>(lag + 1);
    }
    return finish(BaselineMethod::NeweyWest, pw, weights, static_cast<double>(lag));
}

}  // namespace fdcv
