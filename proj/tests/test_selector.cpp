#include "oracles.hpp"

#include "fdcv/error.hpp"
#include "fdcv/reml.hpp"
#include "fdcv/selector.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace fdcv;

namespace {

// CV computed from scratch: direct DFT, leave-one-out by definition, inverse
// by direct sum, and the candidate refitted on that series.
double cv_oracle(const std::vector<double>& x, const CandidateSpec& cand, double c)
{
    const std::size_t n = x.size();
    const std::size_t nt = (n - 1) / 2;
    const auto band = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(nt), c) + 1e-9));
    const auto J = oracle::naive_dft(x);
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t j = 1; j <= band; ++j) {
        const double I = static_cast<double>(n) / (2.0 * std::numbers::pi) * std::norm(J[j]);
        if (I <= 0.0) continue;
        auto L = J;
        L[0] = 0.0;
        if (j == 1) {
            L[1] = J[2];
            L[n - 1] = J[n - 2];
        } else {
            L[j] = 0.5 * (J[j - 1] + J[j + 1]);
            L[n - j] = 0.5 * (J[n - j - 1] + J[n - j + 1]);
        }
        std::vector<double> y(n, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            oracle::cplx s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                const double a = 2.0 * std::numbers::pi * static_cast<double>(k * t % n) / static_cast<double>(n);
                s += L[k] * oracle::cplx(std::cos(a), std::sin(a));
            }
            y[t] = s.real();
        }
        const double w = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        double f = 0.0;
        if (cand.is_ar()) {
            RemlOptions o;
            o.backend = QuadFormBackend::Innovations;
            f = ar_spectrum(reml_fit(y, cand.parameter, o).model, w);
        } else {
            f = lag_weights_estimate(y, cand.parameter, w);
        }
        const double d = std::log(f) - std::log(I) - 0.5772156649015329;
        sum += d * d - std::numbers::pi * std::numbers::pi / 6.0;
        ++used;
    }
    return sum / static_cast<double>(used);
}

CvOptions serial_options()
{
    CvOptions o;
    o.parallel = false;
    return o;
}

}  // namespace

TEST_CASE("band size")
{
    CHECK(band_size(24, 0.8) == 12);
    CHECK(band_size(99, 0.8) == 39);
    CHECK(band_size(32, 0.8) == 16);
    CHECK(band_size(24, 0.2) == 1);
    CHECK_THROWS_AS((void)band_size(24, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)band_size(24, 1.0), std::invalid_argument);
}

TEST_CASE("CV score matches the from-scratch computation")
{
    const auto x = oracle::ar_path({0.7}, 41, 5);
    const TimeSeries s(x);
    for (const auto& cand : CandidateClass::for_length(x.size()).candidates) {
        const auto got = cv_score(cand, s, serial_options());
        CHECK_FALSE(got.disqualified);
        CHECK(got.band_size == band_size(20, 0.8));
        CHECK(got.score == doctest::Approx(cv_oracle(x, cand, 0.8)).epsilon(1e-6));
    }
}

TEST_CASE("CV score for another band exponent")
{
    const auto x = oracle::gaussian(50, 8);
    const TimeSeries s(x);
    CvOptions o = serial_options();
    o.c = 0.5;
    for (const auto& cand : {CandidateSpec::ar(2), CandidateSpec::parzen(2)}) {
        CHECK(cv_score(cand, s, o).score == doctest::Approx(cv_oracle(x, cand, 0.5)).epsilon(1e-6));
    }
}

TEST_CASE("serial and parallel scoring are identical")
{
    const TimeSeries s(oracle::ar_path({0.9}, 50, 2));
    const auto cls = CandidateClass::for_length(50);
    const auto a = cv_scores_serial(s, cls.candidates);
    const auto b = cv_scores(s, cls.candidates);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].candidate == b[i].candidate);
        CHECK(a[i].score == b[i].score);
    }
}

TEST_CASE("fast and reference leave-one-out give the same scores")
{
    const TimeSeries s(oracle::ar_path({0.5}, 60, 3));
    const auto cls = CandidateClass::for_length(60);
    CvOptions slow = serial_options();
    slow.fast_leave_one_out = false;
    const auto a = cv_scores_serial(s, cls.candidates);
    const auto b = cv_scores_serial(s, cls.candidates, slow);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].score == doctest::Approx(b[i].score).epsilon(1e-8));
}

TEST_CASE("zero periodogram ordinates are skipped")
{
    // Period 20 on n = 40 leaves every odd Fourier ordinate exactly zero.
    const std::size_t n = 40;
    const int pattern[4] = {1, 0, -1, 0};
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = pattern[t % 4] + (t % 20 == 0 ? 1.0 : 0.0);
    const TimeSeries s(x);
    REQUIRE(periodogram(s).at(3) == 0.0);
    const auto sc = cv_score(CandidateSpec::parzen(2), s, serial_options());
    CHECK(sc.band_size == 10);
    CHECK(sc.terms_used == 5);
    CHECK(std::isfinite(sc.score));
}

TEST_CASE("standard error and intervals")
{
    CHECK(hac_standard_error(1.0 / (2.0 * std::numbers::pi), 101) == doctest::Approx(0.1));
    CHECK(hac_standard_error(100.0 / (2.0 * std::numbers::pi), 26) == doctest::Approx(2.0));
    CHECK_THROWS_AS((void)hac_standard_error(0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS((void)hac_standard_error(1.0, 1), std::invalid_argument);

    const auto ci = normal_interval(1.0, 0.5, 0.95);
    CHECK(ci.lower == doctest::Approx(1.0 - 1.959963985 * 0.5));
    CHECK(ci.upper == doctest::Approx(1.0 + 1.959963985 * 0.5));
    CHECK(ci.contains(1.9));
    CHECK_FALSE(ci.contains(2.0));
    CHECK(normal_interval(0.0, 1.0, 0.90).upper == doctest::Approx(1.644853627));
    CHECK(normal_interval(0.0, 1.0, 0.99).upper == doctest::Approx(2.575829304));
    CHECK_THROWS_AS((void)normal_interval(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("selection picks the minimum and refits on demeaned data")
{
    const auto x = oracle::ar_path({0.9}, 50, 10);
    const TimeSeries s(x);
    const auto result = select(s, CandidateClass::for_length(50), Restriction::All, serial_options());
    REQUIRE(result.all_scores.size() == 9);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& sc : result.all_scores) best = std::min(best, sc.score);
    for (const auto& sc : result.all_scores) {
        if (sc.candidate == result.selected.spec()) CHECK(sc.score == best);
    }
    const auto refit = fit_candidate(result.selected.spec(), s.demeaned(), serial_options().reml);
    CHECK(result.f0_hat == doctest::Approx(refit.evaluate(0.0)));
    CHECK(result.long_run_variance == doctest::Approx(2.0 * std::numbers::pi * result.f0_hat));
    CHECK(result.se_hat == doctest::Approx(hac_standard_error(result.f0_hat, 50)));
    CHECK(result.mean == doctest::Approx(s.mean()));
    REQUIRE(result.intervals.size() == 3);
    CHECK(result.intervals[0].upper - result.intervals[0].lower
          < result.intervals[2].upper - result.intervals[2].lower);
}

TEST_CASE("restrictions pick inside their subset and share scores")
{
    const TimeSeries s(oracle::ar_path({0.4}, 80, 12));
    const auto cls = CandidateClass::for_length(80);
    const auto all = cv_scores_serial(s, cls.candidates);
    const auto ar = select(s, cls, Restriction::ArOnly, serial_options());
    const auto pz = select(s, cls, Restriction::ParzenOnly, serial_options());
    CHECK(ar.selected.spec().is_ar());
    CHECK_FALSE(pz.selected.spec().is_ar());
    CHECK(ar.all_scores.size() == 6);
    CHECK(pz.all_scores.size() == cls.max_truncation);
    for (const auto& sc : pz.all_scores) {
        for (const auto& full : all) {
            if (full.candidate == sc.candidate) CHECK(full.score == sc.score);
        }
    }
}

TEST_CASE("ties go to the earlier candidate and disqualified ones never win")
{
    const TimeSeries s(oracle::gaussian(30, 1));
    std::vector<CvScore> scores(3);
    scores[0].candidate = CandidateSpec::ar(0);
    scores[0].score = std::numeric_limits<double>::infinity();
    scores[0].disqualified = true;
    scores[1].candidate = CandidateSpec::ar(1);
    scores[1].score = -0.2;
    scores[2].candidate = CandidateSpec::parzen(1);
    scores[2].score = -0.2;
    const auto r = select_from_scores(s, scores, Restriction::All, serial_options());
    CHECK(r.selected.spec() == CandidateSpec::ar(1));

    scores[1].disqualified = scores[2].disqualified = true;
    CHECK_THROWS_AS((void)select_from_scores(s, scores, Restriction::All, serial_options()), NumericalError);
}

TEST_CASE("end-to-end shift invariance")
{
    auto x = oracle::ar_path({0.9}, 50, 77);
    const auto cls = CandidateClass::for_length(50);
    const auto a = select(TimeSeries(x), cls, Restriction::All, serial_options());
    for (double& v : x) v += 1e6;
    const auto b = select(TimeSeries(x), cls, Restriction::All, serial_options());
    CHECK(a.selected.spec() == b.selected.spec());
    for (std::size_t i = 0; i < a.all_scores.size(); ++i) {
        CHECK(b.all_scores[i].score == doctest::Approx(a.all_scores[i].score).epsilon(1e-6));
    }
    CHECK(b.f0_hat == doctest::Approx(a.f0_hat).epsilon(1e-6));
    CHECK(b.mean - a.mean == doctest::Approx(1e6));
}

TEST_CASE("too short for a band")
{
    CvOptions o = serial_options();
    o.c = 0.1;
    const TimeSeries s(oracle::gaussian(8, 2));
    CHECK(cv_score(CandidateSpec::parzen(1), s, o).band_size == 1);
}
