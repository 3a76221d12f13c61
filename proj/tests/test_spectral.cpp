#include "oracles.hpp"

#include "fdcv/error.hpp"
#include "fdcv/fft.hpp"
#include "fdcv/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace fdcv;

TEST_CASE("dft matches the direct sum for even, odd and prime lengths")
{
    for (std::size_t n : {8u, 15u, 50u, 97u, 200u}) {
        const auto x = oracle::gaussian(n, static_cast<unsigned>(n));
        const auto fast = dft(x);
        const auto slow = oracle::naive_dft(x);
        REQUIRE(fast.size() == n);
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(fast[k] - slow[k]) < 1e-12);
    }
}

TEST_CASE("dft of a pure cosine")
{
    const std::size_t n = 64;
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = std::cos(2.0 * std::numbers::pi * 5.0 * t / n);
    const auto J = dft(x);
    CHECK(std::abs(J[5] - cplx(0.5, 0.0)) < 1e-14);
    CHECK(std::abs(J[59] - cplx(0.5, 0.0)) < 1e-14);
    CHECK(std::abs(J[0]) < 1e-14);
    CHECK(std::abs(J[6]) < 1e-14);
}

TEST_CASE("Parseval with the 1/n convention")
{
    const auto x = oracle::gaussian(101, 3);
    const auto J = dft(x);
    double time = 0.0;
    double freq = 0.0;
    for (double v : x) time += v * v;
    for (const auto& z : J) freq += std::norm(z);
    CHECK(freq * 101.0 == doctest::Approx(time).epsilon(1e-12));
}

TEST_CASE("Fourier round trip")
{
    for (std::size_t n : {16u, 33u, 1000u}) {
        const auto x = oracle::gaussian(n, 11);
        const auto back = inverse_dft(dft(x));
        double worst = 0.0;
        for (std::size_t t = 0; t < n; ++t) worst = std::max(worst, std::abs(back[t] - x[t]));
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("unnormalized fft wrappers invert each other up to n")
{
    const auto x = oracle::gaussian(24, 5);
    auto X = fft::forward(std::span<const double>(x));
    auto y = fft::backward(X);
    for (std::size_t t = 0; t < x.size(); ++t) CHECK(y[t].real() / 24.0 == doctest::Approx(x[t]));
}

TEST_CASE("inverse_dft rejects a spectrum that is not conjugate symmetric")
{
    std::vector<cplx> J(8, cplx(0.0, 0.0));
    J[1] = cplx(1.0, 0.0);
    CHECK_THROWS_AS((void)inverse_dft(J), NumericalError);
}

TEST_CASE("periodogram is (n/2pi)|J_j|^2 on j = 1..n_tilde")
{
    for (std::size_t n : {50u, 51u}) {
        const auto x = oracle::gaussian(n, 8);
        const TimeSeries s(x);
        const auto I = periodogram(s);
        const auto J = oracle::naive_dft(x);
        REQUIRE(I.n_tilde == (n - 1) / 2);
        REQUIRE(I.ordinates.size() == I.n_tilde);
        for (std::size_t j = 1; j <= I.n_tilde; ++j) {
            CHECK(I.at(j) == doctest::Approx(n / (2.0 * std::numbers::pi) * std::norm(J[j])));
        }
    }
}

TEST_CASE("periodogram ignores the mean")
{
    auto x = oracle::gaussian(40, 1);
    const auto a = periodogram(TimeSeries(x));
    for (double& v : x) v += 123.0;
    const auto b = periodogram(TimeSeries(x));
    for (std::size_t j = 1; j <= a.n_tilde; ++j) CHECK(b.at(j) == doctest::Approx(a.at(j)).epsilon(1e-9));
}

TEST_CASE("time series validation")
{
    CHECK_THROWS_AS(TimeSeries(std::vector<double>(7, 1.0)), DataError);
    auto x = oracle::gaussian(20, 2);
    x[4] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(TimeSeries{x}, DataError);
    x[4] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(TimeSeries{x}, DataError);

    const TimeSeries s(std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8, 9});
    CHECK(s.size() == 9);
    CHECK(s.n_tilde() == 4);
    CHECK(s.mean() == doctest::Approx(5.0));
    CHECK(s.demeaned().front() == doctest::Approx(-4.0));
}

TEST_CASE("sample autocovariance uses the 1/n divisor and no demeaning")
{
    const std::vector<double> x{1.0, 2.0, -1.0, 0.5};
    const auto c = sample_autocovariance(x, 3);
    CHECK(c[0] == doctest::Approx((1 + 4 + 1 + 0.25) / 4.0));
    CHECK(c[1] == doctest::Approx((2.0 - 2.0 - 0.5) / 4.0));
    CHECK(c[2] == doctest::Approx((-1.0 + 1.0) / 4.0));
    CHECK(c[3] == doctest::Approx(0.5 / 4.0));
    CHECK_THROWS_AS((void)sample_autocovariance(x, 4), std::invalid_argument);
}

namespace {

// Leave-one-out DFT written out from its definition.
std::vector<cplx> loo_reference(const std::vector<double>& x, std::size_t j)
{
    const auto J = oracle::naive_dft(x);
    const std::size_t n = x.size();
    std::vector<cplx> out(J);
    out[0] = 0.0;
    if (j == 1) {
        out[1] = J[2];
        out[n - 1] = J[n - 2];
    } else {
        out[j] = 0.5 * (J[j - 1] + J[j + 1]);
        out[n - j] = 0.5 * (J[n - j - 1] + J[n - j + 1]);
    }
    return out;
}

}  // namespace

TEST_CASE("leave-one-out DFT follows the definition")
{
    for (std::size_t n : {20u, 21u}) {
        const auto x = oracle::gaussian(n, 4);
        const TimeSeries s(x);
        for (std::size_t j = 1; j <= s.n_tilde(); ++j) {
            const auto got = leave_one_out_dft(s, j);
            const auto want = loo_reference(x, j);
            REQUIRE(got.size() == n);
            for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(got[k] - want[k]) < 1e-12);
        }
    }
}

TEST_CASE("leave-one-out series: fast path equals the inverse transform")
{
    for (std::size_t n : {9u, 50u, 51u, 200u}) {
        const auto x = oracle::gaussian(n, static_cast<unsigned>(n + 1));
        const TimeSeries s(x);
        for (std::size_t j = 1; j <= s.n_tilde(); ++j) {
            const auto ref = leave_one_out_series(s, j);
            const auto fast = leave_one_out_series_fast(s, j);
            REQUIRE(fast.values.size() == n);
            CHECK(ref.j == j);
            for (std::size_t t = 0; t < n; ++t) CHECK(fast.values[t] == doctest::Approx(ref.values[t]).epsilon(1e-10));
        }
    }
}

TEST_CASE("leave-one-out series has zero mean and ignores shifts")
{
    auto x = oracle::gaussian(60, 9);
    const TimeSeries a(x);
    for (double& v : x) v += 1e6;
    const TimeSeries b(x);
    for (std::size_t j : {1u, 2u, 17u, 29u}) {
        const auto la = leave_one_out_series_fast(a, j);
        const auto lb = leave_one_out_series_fast(b, j);
        double sum = 0.0;
        for (std::size_t t = 0; t < la.values.size(); ++t) {
            sum += la.values[t];
            CHECK(lb.values[t] == doctest::Approx(la.values[t]).epsilon(1e-6));
        }
        CHECK(std::abs(sum) < 1e-10);
    }
}

TEST_CASE("leave-one-out removes the ordinate at j")
{
    // A series that is a single sinusoid at frequency j = 3 loses it entirely
    // once the ordinate is replaced by the (zero) neighbours.
    const std::size_t n = 32;
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = std::cos(2.0 * std::numbers::pi * 3.0 * t / n);
    const auto loo = leave_one_out_series(TimeSeries(x), 3);
    for (double v : loo.values) CHECK(std::abs(v) < 1e-12);
}
