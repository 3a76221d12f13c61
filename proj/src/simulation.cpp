#include "fdcv/simulation.hpp"

#include "fdcv/ar_model.hpp"
#include "fdcv/baselines.hpp"
#include "fdcv/error.hpp"
#include "fdcv/selector.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fdcv {

DgpSpec DgpSpec::ar1(double phi, std::size_t n)
{
    DgpSpec s;
    s.family = DgpFamily::AR1;
    s.phi = phi;
    s.n = n;
    return s;
}

DgpSpec DgpSpec::white_noise(std::size_t n)
{
    DgpSpec s;
    s.family = DgpFamily::WhiteNoise;
    s.n = n;
    return s;
}

DgpSpec DgpSpec::ma1(double psi, std::size_t n)
{
    DgpSpec s;
    s.family = DgpFamily::MA1;
    s.psi = psi;
    s.n = n;
    return s;
}

DgpSpec DgpSpec::maq(double alpha, double beta, int q, std::size_t n)
{
    DgpSpec s;
    s.family = DgpFamily::MAq;
    s.alpha = alpha;
    s.beta = beta;
    s.q = q;
    s.n = n;
    return s;
}

DgpSpec DgpSpec::ar2_half_phi(double phi, std::size_t n)
{
    DgpSpec s;
    s.family = DgpFamily::AR2HalfPhi;
    s.phi = phi;
    s.n = n;
    return s;
}

std::vector<double> DgpSpec::ar_coefficients() const
{
    switch (family) {
    case DgpFamily::AR1: return {phi};
    case DgpFamily::AR2HalfPhi: return {phi / 2.0, phi / 2.0};
    default: return {};
    }
}

std::optional<std::size_t> DgpSpec::true_ar_order() const
{
    switch (family) {
    case DgpFamily::WhiteNoise: return 0;
    case DgpFamily::AR1: return phi == 0.0 ? 0 : 1;
    case DgpFamily::AR2HalfPhi: return phi == 0.0 ? 0 : 2;
    default: return std::nullopt;
    }
}

void DgpSpec::validate() const
{
    if (n < kMinBaselineLength) throw ConfigError("dgp.n: need at least 10 observations");
    if (family == DgpFamily::MAq && q != 2 && q != 3) throw ConfigError("dgp.q: must be 2 or 3");
    const auto phis = ar_coefficients();
    if (!phis.empty()) {
        try {
            (void)ar_to_pacf(phis);
        } catch (const std::domain_error&) {
            throw ConfigError("dgp.phi: autoregression is not stationary");
        }
    }
}

std::string DgpSpec::label() const
{
    std::ostringstream os;
    switch (family) {
    case DgpFamily::AR1: os << "AR1(phi=" << phi << ")"; break;
    case DgpFamily::WhiteNoise: os << "WhiteNoise"; break;
    case DgpFamily::MA1: os << "MA1(psi=" << psi << ")"; break;
    case DgpFamily::MAq:
        os << "MA" << q << "(alpha=" << alpha << ",beta=" << beta << ")";
        break;
    case DgpFamily::AR2HalfPhi: os << "AR2HalfPhi(phi=" << phi << ")"; break;
    }
    return os.str();
}

std::string_view to_string(DgpFamily f)
{
    switch (f) {
    case DgpFamily::AR1: return "ar1";
    case DgpFamily::WhiteNoise: return "white-noise";
    case DgpFamily::MA1: return "ma1";
    case DgpFamily::MAq: return "maq";
    case DgpFamily::AR2HalfPhi: return "ar2-half-phi";
    }
    return "white-noise";
}

namespace {

std::string lowered(std::string_view text)
{
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    std::replace(s.begin(), s.end(), '_', '-');
    return s;
}

}  // namespace

DgpFamily parse_dgp_family(std::string_view text)
{
    const auto s = lowered(text);
    for (auto f : {DgpFamily::AR1, DgpFamily::WhiteNoise, DgpFamily::MA1, DgpFamily::MAq,
                   DgpFamily::AR2HalfPhi}) {
        if (s == to_string(f)) return f;
    }
    if (s == "wn") return DgpFamily::WhiteNoise;
    throw ConfigError("dgp.family: unknown family '" + std::string(text) + "'");
}

std::vector<double> simulate(const DgpSpec& spec, std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 engine(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::size_t n = spec.n;
    std::vector<double> x(n);

    switch (spec.family) {
    case DgpFamily::WhiteNoise:
        for (double& v : x) v = normal(engine);
        break;
    case DgpFamily::MA1: {
        double prev = normal(engine);
        for (std::size_t t = 0; t < n; ++t) {
            const double e = normal(engine);
            x[t] = e + spec.psi * prev;
            prev = e;
        }
        break;
    }
    case DgpFamily::MAq: {
        const auto q = static_cast<std::size_t>(spec.q);
        std::vector<double> e(n + q);
        for (double& v : e) v = normal(engine);
        for (std::size_t t = 0; t < n; ++t) {
            x[t] = e[t + q] + spec.alpha * e[t + q - 1] + spec.beta * e[t];
        }
        break;
    }
    case DgpFamily::AR1:
    case DgpFamily::AR2HalfPhi: {
        const auto phi = spec.ar_coefficients();
        const std::size_t p = phi.size();
        const auto ladder = prediction_ladder(ar_to_pacf(phi));
        // The first p values follow the exact one-step predictors of the
        // stationary process, so the path is stationary from t = 0.
        for (std::size_t t = 0; t < std::min(p, n); ++t) {
            double pred = 0.0;
            for (std::size_t i = 1; i <= t; ++i) pred += ladder.coefficients[t][i - 1] * x[t - i];
            x[t] = pred + std::sqrt(ladder.variance_ratio[t]) * normal(engine);
        }
        for (std::size_t t = p; t < n; ++t) {
            double pred = 0.0;
            for (std::size_t i = 1; i <= p; ++i) pred += phi[i - 1] * x[t - i];
            x[t] = pred + normal(engine);
        }
        break;
    }
    }
    return x;
}

double true_long_run_variance(const DgpSpec& spec)
{
    double v = 1.0;
    switch (spec.family) {
    case DgpFamily::WhiteNoise: v = 1.0; break;
    case DgpFamily::AR1:
    case DgpFamily::AR2HalfPhi: v = 1.0 / ((1.0 - spec.phi) * (1.0 - spec.phi)); break;
    case DgpFamily::MA1: v = (1.0 + spec.psi) * (1.0 + spec.psi); break;
    case DgpFamily::MAq: {
        const double s = 1.0 + spec.alpha + spec.beta;
        v = s * s;
        break;
    }
    }
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw NumericalError("long-run variance of " + spec.label() + " is zero");
    }
    return v;
}

double badness(double p)
{
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("coverage must lie in [0, 1]");
    if (p == 0.0 || p == 1.0) return std::numeric_limits<double>::infinity();
    const auto logit = [](double u) { return std::log(u / (1.0 - u)); };
    const double d = std::abs(logit(p) - logit(kTargetCoverage));
    return p <= kTargetCoverage ? 2.0 * d : d;
}

std::vector<double> relative_efficiency(std::span<const double> coverages)
{
    std::vector<double> b;
    b.reserve(coverages.size());
    for (double p : coverages) b.push_back(badness(p));
    const double best = *std::min_element(b.begin(), b.end());
    std::vector<double> e;
    e.reserve(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (coverages[i] == 1.0 || !std::isfinite(b[i])) {
            e.push_back(0.0);
        } else if (b[i] == best) {
            e.push_back(1.0);
        } else {
            e.push_back(best / b[i]);
        }
    }
    return e;
}

std::string_view to_string(Method m)
{
    switch (m) {
    case Method::CvC: return "CV_C";
    case Method::CvAr: return "CV_AR";
    case Method::CvPz: return "CV_PZ";
    case Method::AmPw: return "AM-PW";
    case Method::NwPw: return "NW-PW";
    }
    return "CV_C";
}

const std::vector<Method>& all_methods()
{
    static const std::vector<Method> methods{Method::CvC, Method::CvAr, Method::CvPz,
                                             Method::AmPw, Method::NwPw};
    return methods;
}

Method parse_method(std::string_view text)
{
    const auto s = lowered(text);
    for (Method m : all_methods()) {
        if (s == lowered(to_string(m))) return m;
    }
    throw ConfigError("methods: unknown method '" + std::string(text) + "'");
}

void ExperimentConfig::validate() const
{
    dgp.validate();
    if (replications < 1) throw ConfigError("replications: must be at least 1");
    if (methods.empty()) throw ConfigError("methods: at least one method is required");
    if (levels.empty()) throw ConfigError("levels: at least one nominal level is required");
    for (double l : levels) {
        if (!(l > 0.0 && l < 1.0)) throw ConfigError("levels: every level must lie in (0, 1)");
    }
    if (!(c > 0.0 && c < 1.0)) throw ConfigError("c: must lie in (0, 1)");
    if (threads < 0) throw ConfigError("threads: must be non-negative");
    if (parzen_max && *parzen_max >= dgp.n) {
        throw ConfigError("parzen_max: must be below the series length");
    }
}

std::optional<double> SelectionStats::ar_win_rate() const
{
    if (cv_c_decisions == 0) return std::nullopt;
    return static_cast<double>(cv_c_ar_wins) / static_cast<double>(cv_c_decisions);
}

std::optional<double> SelectionStats::true_order_rate() const
{
    if (!true_order || cv_ar_decisions == 0) return std::nullopt;
    return static_cast<double>(cv_ar_true_order) / static_cast<double>(cv_ar_decisions);
}

const MethodCoverage* CoverageReport::find(Method m) const
{
    for (const auto& mc : methods) {
        if (mc.method == m) return &mc;
    }
    return nullptr;
}

double CoverageReport::coverage(Method m, double level) const
{
    const auto* mc = find(m);
    if (mc == nullptr) throw std::out_of_range("method not in report");
    for (std::size_t i = 0; i < config.levels.size(); ++i) {
        if (std::abs(config.levels[i] - level) < 1e-12) return mc->coverage[i];
    }
    throw std::out_of_range("level not in report");
}

namespace {

// Per replication and method: -1 failed, otherwise bit i set when the
// interval at levels[i] covers the true mean.
struct ReplicationOutcome {
    std::vector<std::int64_t> covered;
    std::optional<CandidateSpec> cv_c_pick;
    std::optional<CandidateSpec> cv_ar_pick;
};

Restriction restriction_of(Method m)
{
    switch (m) {
    case Method::CvAr: return Restriction::ArOnly;
    case Method::CvPz: return Restriction::ParzenOnly;
    default: return Restriction::All;
    }
}

bool is_cv(Method m) { return m == Method::CvC || m == Method::CvAr || m == Method::CvPz; }

ReplicationOutcome run_replication(const ExperimentConfig& config, std::size_t rep,
                                   const std::vector<double>& z)
{
    ReplicationOutcome out;
    out.covered.assign(config.methods.size(), -1);
    std::vector<double> x;
    try {
        x = simulate(config.dgp, config.seed, rep);
    } catch (const std::exception&) {
        return out;
    }

    const bool any_cv = std::any_of(config.methods.begin(), config.methods.end(), is_cv);
    CvOptions cv;
    cv.c = config.c;
    cv.parallel = false;  // already inside the replication loop
    std::optional<TimeSeries> series;
    std::vector<CvScore> scores;
    if (any_cv) {
        try {
            series.emplace(x);
            const auto cls = CandidateClass::for_length(x.size(), 5, config.parzen_max);
            scores = cv_scores_serial(*series, cls.candidates, cv);
        } catch (const std::exception&) {
            scores.clear();
        }
    }

    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
        const Method m = config.methods[mi];
        double mean = 0.0;
        double se = 0.0;
        try {
            if (is_cv(m)) {
                if (scores.empty()) continue;
                const auto r = select_from_scores(*series, scores, restriction_of(m), cv);
                mean = r.mean;
                se = r.se_hat;
                if (m == Method::CvC) out.cv_c_pick = r.selected.spec();
                if (m == Method::CvAr) out.cv_ar_pick = r.selected.spec();
            } else {
                const auto r = m == Method::AmPw ? am_pw_estimate(x) : nw_pw_estimate(x);
                mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
                se = r.se_hat;
            }
        } catch (const std::exception&) {
            continue;
        }
        std::int64_t bits = 0;
        for (std::size_t li = 0; li < z.size(); ++li) {
            if (std::abs(mean) <= z[li] * se) bits |= std::int64_t{1} << li;
        }
        out.covered[mi] = bits;
    }
    return out;
}

CoverageReport assemble(const ExperimentConfig& config,
                        const std::vector<ReplicationOutcome>& outcomes)
{
    CoverageReport report;
    report.config = config;
    report.selection.true_order = config.dgp.true_ar_order();
    for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
        MethodCoverage mc;
        mc.method = config.methods[mi];
        std::vector<std::size_t> hits(config.levels.size(), 0);
        for (const auto& o : outcomes) {
            if (o.covered[mi] < 0) {
                ++mc.failures;
                continue;
            }
            ++mc.successes;
            for (std::size_t li = 0; li < hits.size(); ++li) {
                if (o.covered[mi] & (std::int64_t{1} << li)) ++hits[li];
            }
        }
        for (std::size_t h : hits) {
            mc.coverage.push_back(mc.successes == 0 ? 0.0
                                                    : static_cast<double>(h)
                                                          / static_cast<double>(mc.successes));
        }
        report.methods.push_back(std::move(mc));
    }
    for (const auto& o : outcomes) {
        if (o.cv_c_pick) {
            ++report.selection.cv_c_decisions;
            if (o.cv_c_pick->is_ar()) ++report.selection.cv_c_ar_wins;
        }
        if (o.cv_ar_pick) {
            ++report.selection.cv_ar_decisions;
            if (report.selection.true_order && o.cv_ar_pick->parameter == *report.selection.true_order) {
                ++report.selection.cv_ar_true_order;
            }
        }
    }
    attach_efficiency(report);
    return report;
}

std::vector<double> critical_values(const std::vector<double>& levels)
{
    std::vector<double> z;
    for (double l : levels) z.push_back(normal_interval(0.0, 1.0, l).upper);
    return z;
}

CoverageReport run(const ExperimentConfig& config, bool parallel)
{
    config.validate();
    if (config.levels.size() > 62) throw ConfigError("levels: at most 62 nominal levels");
    const auto z = critical_values(config.levels);
    std::vector<ReplicationOutcome> outcomes(config.replications);
    if (parallel) {
        int threads = config.threads;
#ifdef _OPENMP
        if (threads <= 0) threads = omp_get_max_threads();
#else
        threads = 1;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(config.replications); ++r) {
            outcomes[static_cast<std::size_t>(r)] =
                run_replication(config, static_cast<std::size_t>(r), z);
        }
        (void)threads;
    } else {
        for (std::size_t r = 0; r < config.replications; ++r) {
            outcomes[r] = run_replication(config, r, z);
        }
    }
    return assemble(config, outcomes);
}

}  // namespace

void attach_efficiency(CoverageReport& report)
{
    std::optional<std::size_t> at95;
    for (std::size_t i = 0; i < report.config.levels.size(); ++i) {
        if (std::abs(report.config.levels[i] - kTargetCoverage) < 1e-12) at95 = i;
    }
    for (auto& mc : report.methods) {
        mc.badness.reset();
        mc.efficiency.reset();
        if (at95 && mc.successes > 0) mc.badness = badness(mc.coverage[*at95]);
    }
    if (!at95) return;
    const auto* c = report.find(Method::CvC);
    const auto* a = report.find(Method::AmPw);
    const auto* w = report.find(Method::NwPw);
    if (!c || !a || !w || !c->successes || !a->successes || !w->successes) return;
    const std::vector<double> p{c->coverage[*at95], a->coverage[*at95], w->coverage[*at95]};
    const auto e = relative_efficiency(p);
    for (auto& mc : report.methods) {
        if (mc.method == Method::CvC) mc.efficiency = e[0];
        if (mc.method == Method::AmPw) mc.efficiency = e[1];
        if (mc.method == Method::NwPw) mc.efficiency = e[2];
    }
}

CoverageReport run_experiment(const ExperimentConfig& config) { return run(config, true); }

CoverageReport run_experiment_serial(const ExperimentConfig& config) { return run(config, false); }

}  // namespace fdcv
