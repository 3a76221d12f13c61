#include "fdcv/spectral.hpp"

#include "fdcv/error.hpp"
#include "fdcv/fft.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fdcv {

struct TimeSeries::State {
    std::vector<double> values;
    double mean = 0.0;
    std::once_flag dft_once;
    std::vector<cplx> dft;
};

TimeSeries::TimeSeries(std::vector<double> values) : state_(std::make_shared<State>())
{
    if (values.size() < kMinSeriesLength) {
        throw DataError("series has " + std::to_string(values.size())
                        + " observations; at least 8 are required");
    }
    for (std::size_t t = 0; t < values.size(); ++t) {
        if (!std::isfinite(values[t])) {
            throw DataError("non-finite observation at index " + std::to_string(t));
        }
    }
    state_->mean = std::accumulate(values.begin(), values.end(), 0.0)
                   / static_cast<double>(values.size());
    state_->values = std::move(values);
}

std::size_t TimeSeries::size() const noexcept { return state_->values.size(); }

std::span<const double> TimeSeries::values() const noexcept { return state_->values; }

double TimeSeries::mean() const noexcept { return state_->mean; }

const std::vector<cplx>& TimeSeries::dft() const
{
    std::call_once(state_->dft_once, [this] { state_->dft = fdcv::dft(state_->values); });
    return state_->dft;
}

std::vector<double> TimeSeries::demeaned() const
{
    std::vector<double> out(values().begin(), values().end());
    for (double& v : out) v -= mean();
    return out;
}

double fourier_frequency(std::size_t j, std::size_t n) noexcept
{
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
}

std::vector<cplx> dft(std::span<const double> x)
{
    auto out = fft::forward(x);
    const double scale = 1.0 / static_cast<double>(x.size());
    for (auto& v : out) v *= scale;
    return out;
}

std::vector<double> inverse_dft(std::span<const cplx> coefficients)
{
    auto raw = fft::backward(coefficients);
    std::vector<double> out(raw.size());
    double max_abs = 0.0;
    double max_imag = 0.0;
    for (std::size_t t = 0; t < raw.size(); ++t) {
        out[t] = raw[t].real();
        max_abs = std::max(max_abs, std::abs(raw[t].real()));
        max_imag = std::max(max_imag, std::abs(raw[t].imag()));
    }
    if (max_imag > 1e-9 * std::max(max_abs, 1e-300) && max_imag > 1e-300) {
        throw NumericalError("inverse DFT left an imaginary residue of "
                             + std::to_string(max_imag));
    }
    return out;
}

Periodogram periodogram(const TimeSeries& series)
{
    const auto& J = series.dft();
    const double n = static_cast<double>(series.size());
    Periodogram out;
    out.n_tilde = series.n_tilde();
    out.ordinates.resize(out.n_tilde);
    for (std::size_t j = 1; j <= out.n_tilde; ++j) {
        out.ordinates[j - 1] = n / (2.0 * std::numbers::pi) * std::norm(J[j]);
    }
    return out;
}

std::vector<double> sample_autocovariance(std::span<const double> x, std::size_t max_lag)
{
    const std::size_t n = x.size();
    if (max_lag >= n) {
        throw std::invalid_argument("max_lag " + std::to_string(max_lag)
                                    + " must be below the series length "
                                    + std::to_string(n));
    }
    std::vector<double> acov(max_lag + 1, 0.0);
    for (std::size_t r = 0; r <= max_lag; ++r) {
        double s = 0.0;
        for (std::size_t t = r; t < n; ++t) s += x[t] * x[t - r];
        acov[r] = s / static_cast<double>(n);
    }
    return acov;
}

namespace {

void check_index(const TimeSeries& series, std::size_t j)
{
    if (j < 1 || j > series.n_tilde()) {
        throw std::invalid_argument("leave-one-out index " + std::to_string(j)
                                    + " outside 1.." + std::to_string(series.n_tilde()));
    }
}

// Replacement value for J_j in the leave-one-out transform.
cplx replacement(const std::vector<cplx>& J, std::size_t j)
{
    if (j == 1) return J[2];
    return 0.5 * (J[j - 1] + J[j + 1]);
}

}  // namespace

std::vector<cplx> leave_one_out_dft(const TimeSeries& series, std::size_t j)
{
    check_index(series, j);
    const auto& J = series.dft();
    const std::size_t n = series.size();
    std::vector<cplx> out(J.begin(), J.end());
    out[0] = 0.0;
    // j <= n_tilde < n/2, so the mirror index never coincides with j.
    const std::size_t mirror = n - j;
    out[j] = replacement(J, j);
    out[mirror] = (j == 1) ? J[n - 2] : 0.5 * (J[mirror - 1] + J[mirror + 1]);
    return out;
}

LeaveOneOutSeries leave_one_out_series(const TimeSeries& series, std::size_t j)
{
    auto coefficients = leave_one_out_dft(series, j);
    return {j, inverse_dft(coefficients)};
}

LeaveOneOutSeries leave_one_out_series_fast(const TimeSeries& series, std::size_t j)
{
    check_index(series, j);
    const auto& J = series.dft();
    const std::size_t n = series.size();
    const cplx delta = replacement(J, j) - J[j];
    LeaveOneOutSeries out{j, series.demeaned()};
    const double w = fourier_frequency(j, n);
    for (std::size_t t = 0; t < n; ++t) {
        const double angle = w * static_cast<double>(t);
        out.values[t] += 2.0 * (delta.real() * std::cos(angle) - delta.imag() * std::sin(angle));
    }
    return out;
}

}  // namespace fdcv
