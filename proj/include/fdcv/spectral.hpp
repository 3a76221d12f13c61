#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace fdcv {

using cplx = std::complex<double>;

/// Smallest series length accepted anywhere in the library.
inline constexpr std::size_t kMinSeriesLength = 8;

/**
 * Real-valued observations x_0..x_{n-1} with a lazily computed DFT.
 *
 * The DFT uses the 1/n convention, J_j = (1/n) sum_t x_t exp(-i w_j t) with
 * w_j = 2 pi j / n, so that x_t = sum_j J_j exp(i w_j t). Copies share the
 * cached transform; the cache is filled at most once and is safe to read
 * from several threads.
 */
class TimeSeries {
public:
    /// Throws DataError when fewer than 8 values are given or any is non-finite.
    explicit TimeSeries(std::vector<double> values);

    [[nodiscard]] std::size_t size() const noexcept;
    [[nodiscard]] std::span<const double> values() const noexcept;
    [[nodiscard]] double mean() const noexcept;

    /// floor((n-1)/2): number of Fourier frequencies strictly inside (0, pi).
    [[nodiscard]] std::size_t n_tilde() const noexcept { return (size() - 1) / 2; }

    [[nodiscard]] const std::vector<cplx>& dft() const;

    /// Values minus their sample mean.
    [[nodiscard]] std::vector<double> demeaned() const;

private:
    struct State;
    std::shared_ptr<State> state_;
};

/// Fourier frequency 2 pi j / n.
[[nodiscard]] double fourier_frequency(std::size_t j, std::size_t n) noexcept;

/// J_0..J_{n-1} with the 1/n normalization.
[[nodiscard]] std::vector<cplx> dft(std::span<const double> x);

/// x_t = sum_k J_k exp(i w_k t). Throws NumericalError when the imaginary
/// residue exceeds 1e-9 * max|x| (the input is not conjugate-symmetric).
[[nodiscard]] std::vector<double> inverse_dft(std::span<const cplx> coefficients);

/// I(w_j) = (n / 2 pi) |J_j|^2 for j = 1..n_tilde.
struct Periodogram {
    std::vector<double> ordinates;  // ordinates[j-1] = I(w_j)
    std::size_t n_tilde = 0;

    [[nodiscard]] double at(std::size_t j) const { return ordinates.at(j - 1); }
};

[[nodiscard]] Periodogram periodogram(const TimeSeries& series);

/// c_r = (1/n) sum_{t=r}^{n-1} x_t x_{t-r}, r = 0..max_lag. The input is used
/// as-is (no demeaning). Throws std::invalid_argument when max_lag >= n.
[[nodiscard]] std::vector<double> sample_autocovariance(std::span<const double> x,
                                                        std::size_t max_lag);

/**
 * Mean-invariant leave-one-out DFT for Fourier index j (1 <= j <= n_tilde).
 *
 * Returns n entries. Entry 0 is always zero: the mean frequency is never
 * produced. The two mirror ordinates j and n-j are replaced by the average of
 * their neighbours; for j = 1 the neighbour J_0 is avoided and J_2 / J_{n-2}
 * are used instead.
 */
[[nodiscard]] std::vector<cplx> leave_one_out_dft(const TimeSeries& series, std::size_t j);

struct LeaveOneOutSeries {
    std::size_t j = 0;
    std::vector<double> values;
};

/// Reference path: inverse transform of leave_one_out_dft over k = 1..n-1.
[[nodiscard]] LeaveOneOutSeries leave_one_out_series(const TimeSeries& series, std::size_t j);

/// Same result as leave_one_out_series via a rank-two update of the demeaned
/// series (only the mirror pair j, n-j changes in the frequency domain).
[[nodiscard]] LeaveOneOutSeries leave_one_out_series_fast(const TimeSeries& series,
                                                          std::size_t j);

}  // namespace fdcv
