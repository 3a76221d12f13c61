#include "fdcv/ar_model.hpp"

#include "fdcv/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fdcv {

namespace {

// Largest reflection magnitude kept by Burg's recursion.
constexpr double kReflectionLimit = 1.0 - 1e-9;

void check_pacf(std::span<const double> pacf)
{
    for (std::size_t k = 0; k < pacf.size(); ++k) {
        if (!(std::abs(pacf[k]) < 1.0)) {
            throw std::invalid_argument("partial autocorrelation at lag " + std::to_string(k + 1)
                                        + " is outside (-1, 1)");
        }
    }
}

}  // namespace

ArModel ArModel::from_pacf(std::vector<double> pacf, double sigma2)
{
    check_pacf(pacf);
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
        throw std::invalid_argument("innovation variance must be positive and finite");
    }
    ArModel model;
    model.phi_ = pacf_to_ar(pacf);
    model.pacf_ = std::move(pacf);
    model.sigma2_ = sigma2;
    return model;
}

ArModel ArModel::from_coefficients(std::vector<double> phi, double sigma2)
{
    auto pacf = ar_to_pacf(phi);
    return from_pacf(std::move(pacf), sigma2);
}

double ArModel::long_run_variance() const
{
    const double gain = 1.0 - std::accumulate(phi_.begin(), phi_.end(), 0.0);
    return sigma2_ / (gain * gain);
}

std::vector<double> pacf_to_ar(std::span<const double> pacf)
{
    check_pacf(pacf);
    std::vector<double> phi;
    phi.reserve(pacf.size());
    for (std::size_t k = 0; k < pacf.size(); ++k) {
        const double kk = pacf[k];
        std::vector<double> next(k + 1);
        for (std::size_t j = 0; j < k; ++j) next[j] = phi[j] - kk * phi[k - 1 - j];
        next[k] = kk;
        phi = std::move(next);
    }
    return phi;
}

std::vector<double> ar_to_pacf(std::span<const double> phi)
{
    const std::size_t p = phi.size();
    std::vector<double> pacf(p);
    std::vector<double> current(phi.begin(), phi.end());
    for (std::size_t k = p; k >= 1; --k) {
        const double kk = current[k - 1];
        if (!(std::abs(kk) < 1.0)) {
            throw std::domain_error("coefficients are not stationary: |phi_kk| >= 1 at level "
                                    + std::to_string(k));
        }
        pacf[k - 1] = kk;
        const double denom = 1.0 - kk * kk;
        std::vector<double> prev(k - 1);
        for (std::size_t j = 0; j + 1 < k; ++j) {
            prev[j] = (current[j] + kk * current[k - 2 - j]) / denom;
        }
        current = std::move(prev);
    }
    return pacf;
}

PredictionLadder prediction_ladder(std::span<const double> pacf)
{
    check_pacf(pacf);
    const std::size_t p = pacf.size();
    PredictionLadder ladder;
    ladder.coefficients.resize(p + 1);
    ladder.variance_ratio.assign(p + 1, 1.0);
    for (std::size_t k = 1; k <= p; ++k) {
        const auto& prev = ladder.coefficients[k - 1];
        auto& row = ladder.coefficients[k];
        row.resize(k);
        const double kk = pacf[k - 1];
        for (std::size_t j = 0; j + 1 < k; ++j) row[j] = prev[j] - kk * prev[k - 2 - j];
        row[k - 1] = kk;
    }
    for (std::size_t k = p; k >= 1; --k) {
        ladder.variance_ratio[k - 1] =
            ladder.variance_ratio[k] / (1.0 - pacf[k - 1] * pacf[k - 1]);
    }
    return ladder;
}

ArModel burg_fit(std::span<const double> x, std::size_t order)
{
    const std::size_t n = x.size();
    if (2 * order >= n) {
        throw std::invalid_argument("Burg order " + std::to_string(order)
                                    + " too large for " + std::to_string(n) + " observations");
    }
    double energy = 0.0;
    for (double v : x) energy += v * v;
    energy /= static_cast<double>(n);
    if (!(energy > 0.0)) throw DataError("Burg fit on a zero-variance series");

    std::vector<double> fwd(x.begin(), x.end());
    std::vector<double> bwd(x.begin(), x.end());
    std::vector<double> pacf;
    pacf.reserve(order);
    for (std::size_t k = 1; k <= order; ++k) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t t = k; t < n; ++t) {
            num += fwd[t] * bwd[t - 1];
            den += fwd[t] * fwd[t] + bwd[t - 1] * bwd[t - 1];
        }
        double kk = den > 0.0 ? 2.0 * num / den : 0.0;
        kk = std::clamp(kk, -kReflectionLimit, kReflectionLimit);
        // Descending t so bwd[t-1] is still the previous-order error.
        for (std::size_t t = n - 1; t >= k; --t) {
            const double f = fwd[t];
            fwd[t] = f - kk * bwd[t - 1];
            bwd[t] = bwd[t - 1] - kk * f;
        }
        energy *= 1.0 - kk * kk;
        pacf.push_back(kk);
    }
    return ArModel::from_pacf(std::move(pacf), energy);
}

std::vector<double> theoretical_acvf(const ArModel& model, std::size_t max_lag)
{
    const std::size_t p = model.order();
    const auto& phi = model.phi();
    const auto dim = static_cast<Eigen::Index>(p + 1);
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(dim, dim);
    for (std::size_t k = 0; k <= p; ++k) {
        for (std::size_t j = 1; j <= p; ++j) {
            const std::size_t lag = k > j ? k - j : j - k;
            system(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(lag)) -= phi[j - 1];
        }
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
    rhs(0) = model.sigma2();
    const Eigen::VectorXd head = system.partialPivLu().solve(rhs);

    std::vector<double> acvf(std::max(max_lag, p) + 1);
    for (std::size_t k = 0; k <= p; ++k) acvf[k] = head(static_cast<Eigen::Index>(k));
    for (std::size_t k = p + 1; k < acvf.size(); ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= p; ++j) s += phi[j - 1] * acvf[k - j];
        acvf[k] = s;
    }
    acvf.resize(max_lag + 1);
    return acvf;
}

double ar_spectrum(const ArModel& model, double omega)
{
    std::complex<double> transfer = 1.0;
    const auto& phi = model.phi();
    for (std::size_t k = 1; k <= phi.size(); ++k) {
        transfer -= phi[k - 1] * std::polar(1.0, omega * static_cast<double>(k));
    }
    return model.sigma2() / (2.0 * std::numbers::pi * std::norm(transfer));
}

}  // namespace fdcv
