#pragma once

#include "fdcv/estimators.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fdcv {

enum class DgpFamily { AR1, WhiteNoise, MA1, MAq, AR2HalfPhi };

/// Gaussian data-generating process with unit innovation variance and mean 0.
///   AR1         X_t = phi X_{t-1} + e_t
///   WhiteNoise  X_t = e_t
///   MA1         X_t = e_t + psi e_{t-1}
///   MAq         X_t = e_t + alpha e_{t-1} + beta e_{t-q}, q in {2, 3}
///   AR2HalfPhi  X_t = (phi/2) X_{t-1} + (phi/2) X_{t-2} + e_t
struct DgpSpec {
    DgpFamily family = DgpFamily::WhiteNoise;
    std::size_t n = 50;
    double phi = 0.0;
    double psi = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    int q = 2;

    static DgpSpec ar1(double phi, std::size_t n);
    static DgpSpec white_noise(std::size_t n);
    static DgpSpec ma1(double psi, std::size_t n);
    static DgpSpec maq(double alpha, double beta, int q, std::size_t n);
    static DgpSpec ar2_half_phi(double phi, std::size_t n);

    /// Throws ConfigError on non-stationary AR parameters, q outside {2, 3}
    /// or n < 10.
    void validate() const;
    /// e.g. "AR1(phi=0.9)".
    [[nodiscard]] std::string label() const;
    /// AR coefficients for the autoregressive families, empty otherwise.
    [[nodiscard]] std::vector<double> ar_coefficients() const;
    /// Order of the generating autoregression (0 for white noise), nullopt for MA families.
    [[nodiscard]] std::optional<std::size_t> true_ar_order() const;
};

[[nodiscard]] std::string_view to_string(DgpFamily f);
/// "ar1", "white-noise", "ma1", "maq", "ar2-half-phi" (case-insensitive).
[[nodiscard]] DgpFamily parse_dgp_family(std::string_view text);

/// Name of the generator behind simulate(); written into every report.
inline constexpr std::string_view kRngDescription =
    "mt19937_64 seeded by seed_seq(seed, stream); std::normal_distribution";

/// One path of length spec.n. AR paths start exactly in the stationary
/// distribution; MA paths draw their presample innovations. The same
/// (seed, stream) always gives the same path.
[[nodiscard]] std::vector<double> simulate(const DgpSpec& spec, std::uint64_t seed,
                                           std::uint64_t stream = 0);

/// 2 pi f(0) of the process. Throws NumericalError when it is zero.
[[nodiscard]] double true_long_run_variance(const DgpSpec& spec);

inline constexpr double kTargetCoverage = 0.95;

/// 2 |logit p - logit 0.95| for p <= 0.95, |logit p - logit 0.95| above.
/// +inf for p in {0, 1}. Throws std::invalid_argument outside [0, 1].
[[nodiscard]] double badness(double p);

/// e_i = min_k B(p_k) / B(p_i), with e_i = 0 when p_i = 1 and e_i = 1 when
/// B(p_i) attains the minimum (including the all-zero case).
[[nodiscard]] std::vector<double> relative_efficiency(std::span<const double> coverages);

enum class Method { CvC, CvAr, CvPz, AmPw, NwPw };

[[nodiscard]] std::string_view to_string(Method m);
/// Accepts the to_string forms and lower-case aliases (cv-c, am-pw, ...).
[[nodiscard]] Method parse_method(std::string_view text);
[[nodiscard]] const std::vector<Method>& all_methods();

struct ExperimentConfig {
    DgpSpec dgp;
    std::vector<Method> methods = all_methods();
    std::size_t replications = 3000;
    std::vector<double> levels{0.90, 0.95, 0.99};
    std::uint64_t seed = 20240601;
    double c = 0.8;
    int threads = 0;  // 0: OpenMP default
    std::optional<std::size_t> parzen_max;  // overrides m(n) in the candidate class

    /// Throws ConfigError with the offending field name.
    void validate() const;
};

struct MethodCoverage {
    Method method = Method::CvC;
    std::vector<double> coverage;  // per level, over successful replications
    std::size_t successes = 0;
    std::size_t failures = 0;
    std::optional<double> badness;     // at 95% nominal, when 0.95 is among the levels
    std::optional<double> efficiency;  // at 95%, when CV_C, AM-PW and NW-PW all ran
};

struct SelectionStats {
    std::size_t cv_c_decisions = 0;
    std::size_t cv_c_ar_wins = 0;  // CV_C picked an AR candidate
    std::size_t cv_ar_decisions = 0;
    std::size_t cv_ar_true_order = 0;  // CV_AR picked the generating order
    std::optional<std::size_t> true_order;

    [[nodiscard]] std::optional<double> ar_win_rate() const;
    [[nodiscard]] std::optional<double> true_order_rate() const;
};

struct CoverageReport {
    ExperimentConfig config;
    std::string rng{kRngDescription};
    std::vector<MethodCoverage> methods;
    SelectionStats selection;

    [[nodiscard]] const MethodCoverage* find(Method m) const;
    /// Coverage of method m at the given level; throws std::out_of_range if absent.
    [[nodiscard]] double coverage(Method m, double level) const;
};

/// Simulates every replication, applies each method and checks whether the
/// true mean 0 lies in its intervals. Replications run in parallel (OpenMP);
/// the report is identical to run_experiment_serial for the same config.
[[nodiscard]] CoverageReport run_experiment(const ExperimentConfig& config);

/// Single-threaded reference for run_experiment.
[[nodiscard]] CoverageReport run_experiment_serial(const ExperimentConfig& config);

/// Recomputes badness and efficiency from the coverages already in the report.
void attach_efficiency(CoverageReport& report);

}  // namespace fdcv
