#include "oracles.hpp"

#include "fdcv/ar_model.hpp"
#include "fdcv/error.hpp"
#include "fdcv/toeplitz.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace fdcv;

namespace {

std::vector<double> ar_column(const std::vector<double>& phi, std::size_t n)
{
    return theoretical_acvf(ArModel::from_coefficients(phi, 1.0), n - 1);
}

double relative_error(const std::vector<double>& a, const Eigen::VectorXd& b)
{
    return (oracle::as_vector(a) - b).norm() / b.norm();
}

}  // namespace

TEST_CASE("circulant-embedded product equals the dense product")
{
    for (std::size_t n : {1u, 2u, 7u, 64u, 129u}) {
        std::vector<double> col(n);
        for (std::size_t k = 0; k < n; ++k) col[k] = 1.0 / (1.0 + static_cast<double>(k * k));
        const ToeplitzOperator op(col);
        const auto v = oracle::gaussian(n, 3);
        const Eigen::VectorXd want = oracle::toeplitz(col) * oracle::as_vector(v);
        const auto got = toeplitz_matvec(op, v);
        CHECK(relative_error(got, want) < 1e-13);
    }
}

TEST_CASE("operator rejects bad first columns")
{
    CHECK_THROWS_AS(ToeplitzOperator(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(ToeplitzOperator(std::vector<double>{0.0, 0.1}), std::invalid_argument);
}

TEST_CASE("T. Chan circulant first column")
{
    const std::vector<double> t{4.0, 2.0, 1.0, 0.5};
    const auto pre = tchan_preconditioner(ToeplitzOperator(t));
    const auto& c = pre.first_column();
    REQUIRE(c.size() == 4);
    CHECK(c[0] == doctest::Approx(4.0));
    CHECK(c[1] == doctest::Approx((3.0 * 2.0 + 1.0 * 0.5) / 4.0));
    CHECK(c[2] == doctest::Approx((2.0 * 1.0 + 2.0 * 1.0) / 4.0));
    CHECK(c[3] == doctest::Approx((1.0 * 0.5 + 3.0 * 2.0) / 4.0));
}

TEST_CASE("circulant inverse against a dense circulant solve")
{
    const std::vector<double> col{3.0, 1.0, 0.2, 0.1, 0.2, 1.0};
    const CirculantPreconditioner pre(col);
    for (double e : pre.eigenvalues()) CHECK(e > 0.0);
    Eigen::MatrixXd C(6, 6);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) C(i, j) = col[static_cast<std::size_t>((i - j + 6) % 6)];
    }
    const auto r = oracle::gaussian(6, 4);
    const Eigen::VectorXd want = C.lu().solve(oracle::as_vector(r));
    CHECK(relative_error(pre.apply_inverse(r), want) < 1e-12);
}

TEST_CASE("indefinite circulant is refused")
{
    CHECK_THROWS_AS(CirculantPreconditioner(std::vector<double>{1.0, 2.0, 0.0, 2.0}), NumericalError);
}

TEST_CASE("Levinson and PCG against a dense Cholesky solve")
{
    for (const std::vector<double>& phi :
         {std::vector<double>{0.9}, std::vector<double>{0.45, 0.45}, std::vector<double>{0.3, -0.2, 0.1, 0.05, -0.1}}) {
        for (std::size_t n : {20u, 300u}) {
            const auto col = ar_column(phi, n);
            const ToeplitzOperator op(col);
            const auto b = oracle::gaussian(n, static_cast<unsigned>(n));
            const Eigen::VectorXd want = oracle::toeplitz(col).llt().solve(oracle::as_vector(b));
            CHECK(relative_error(levinson_solve(op, b), want) < 1e-10);
            PcgOptions tight;
            tight.tolerance = 1e-13;
            const auto pcg = pcg_solve(op, b, tight);
            CHECK(relative_error(pcg.solution, want) < 1e-9);
            CHECK(pcg.final_relative_residual <= 1e-13);
            CHECK_FALSE(pcg.used_direct_fallback);
        }
    }
}

TEST_CASE("PCG and Levinson agree on random AR covariances")
{
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    PcgOptions tight;
    tight.tolerance = 1e-12;
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> pacf(1 + rep % 5);
        for (double& v : pacf) v = u(rng);
        const std::size_t n = 100 + 97 * static_cast<std::size_t>(rep);
        const ToeplitzOperator op(theoretical_acvf(ArModel::from_pacf(pacf, 1.0), n - 1));
        const auto b = oracle::gaussian(n, static_cast<unsigned>(rep));
        const auto lev = levinson_solve(op, b);
        const auto pcg = pcg_solve(op, b, tight).solution;
        CHECK(relative_error(pcg, oracle::as_vector(lev)) <= 1e-8);
    }
}

TEST_CASE("preconditioned iteration count does not grow with n")
{
    const std::vector<double> phi{0.5, -0.3, 0.2};
    std::vector<int> counts;
    for (std::size_t n : {256u, 1024u, 4096u}) {
        const ToeplitzOperator op(ar_column(phi, n));
        const auto report = pcg_solve(op, oracle::gaussian(n, 1));
        counts.push_back(report.iterations);
    }
    const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    CHECK(*hi - *lo <= 2);
    CHECK(*hi < 30);
}

TEST_CASE("preconditioning pays off on a strongly correlated AR(1)")
{
    const std::size_t n = 1024;
    const ToeplitzOperator op(ar_column({0.95}, n));
    const auto b = oracle::gaussian(n, 7);
    PcgOptions plain;
    plain.preconditioning = Preconditioning::None;
    plain.max_iterations = 2000;
    const auto with = pcg_solve(op, b);
    const auto without = pcg_solve(op, b, plain);
    CHECK(with.iterations * 3 < without.iterations);
}

TEST_CASE("PCG reports non-convergence with its best iterate")
{
    const std::size_t n = 512;
    const ToeplitzOperator op(ar_column({0.95}, n));
    PcgOptions few;
    few.max_iterations = 1;
    few.preconditioning = Preconditioning::None;
    try {
        (void)pcg_solve(op, oracle::gaussian(n, 2), few);
        FAIL("expected PcgNotConverged");
    } catch (const PcgNotConverged& e) {
        CHECK(e.best().solution.size() == n);
        CHECK(e.best().final_relative_residual > few.tolerance);
    }
}

TEST_CASE("dispatching solve")
{
    const auto b = oracle::gaussian(300, 5);
    const ToeplitzOperator op(ar_column({0.7}, 300));
    const Eigen::VectorXd want = oracle::toeplitz(op.first_column()).llt().solve(oracle::as_vector(b));

    SolverOptions direct;
    direct.direct_threshold = 1000;
    const auto d = toeplitz_solve(op, b, direct);
    CHECK(d.iterations == 0);
    CHECK(relative_error(d.solution, want) < 1e-10);

    SolverOptions iterative;
    iterative.direct_threshold = 10;
    const auto it = toeplitz_solve(op, b, iterative);
    CHECK(it.iterations > 0);
    CHECK(relative_error(it.solution, want) < 1e-7);

    SolverOptions starved = iterative;
    starved.pcg.max_iterations = 1;
    starved.pcg.preconditioning = Preconditioning::None;
    const auto fb = toeplitz_solve(op, b, starved);
    CHECK(fb.used_direct_fallback);
    CHECK(relative_error(fb.solution, want) < 1e-10);
}
