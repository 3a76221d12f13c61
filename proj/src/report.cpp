#include "fdcv/report.hpp"

#include "fdcv/error.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace fdcv {

namespace {

std::string fixed(double v, int digits)
{
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string pad(const std::string& s, std::size_t width)
{
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

std::string lpad(const std::string& s, std::size_t width)
{
    return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string level_name(double level) { return fixed(100.0 * level, 0) + "%"; }

nlohmann::json score_json(const CvScore& s)
{
    nlohmann::json j{{"candidate", s.candidate.label()},
                     {"band_size", s.band_size},
                     {"terms_used", s.terms_used},
                     {"disqualified", s.disqualified}};
    j["score"] = s.disqualified ? nlohmann::json(nullptr) : nlohmann::json(s.score);
    if (!s.reason.empty()) j["reason"] = s.reason;
    return j;
}

nlohmann::json dgp_json(const DgpSpec& d)
{
    nlohmann::json j{{"family", std::string(to_string(d.family))}, {"n", d.n}, {"label", d.label()}};
    switch (d.family) {
    case DgpFamily::AR1:
    case DgpFamily::AR2HalfPhi: j["phi"] = d.phi; break;
    case DgpFamily::MA1: j["psi"] = d.psi; break;
    case DgpFamily::MAq:
        j["alpha"] = d.alpha;
        j["beta"] = d.beta;
        j["q"] = d.q;
        break;
    case DgpFamily::WhiteNoise: break;
    }
    return j;
}

DgpSpec dgp_from_json(const nlohmann::json& j)
{
    DgpSpec d;
    d.family = parse_dgp_family(j.at("family").get<std::string>());
    d.n = j.at("n").get<std::size_t>();
    d.phi = j.value("phi", 0.0);
    d.psi = j.value("psi", 0.0);
    d.alpha = j.value("alpha", 0.0);
    d.beta = j.value("beta", 0.0);
    d.q = j.value("q", 2);
    return d;
}

nlohmann::json optional_json(const std::optional<double>& v)
{
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const FdcvResult& r)
{
    nlohmann::json scores = nlohmann::json::array();
    for (const auto& s : r.all_scores) scores.push_back(score_json(s));
    nlohmann::json intervals = nlohmann::json::array();
    for (const auto& ci : r.intervals) {
        intervals.push_back({{"level", ci.level}, {"lower", ci.lower}, {"upper", ci.upper}});
    }
    nlohmann::json j{{"schema_version", kSchemaVersion},
                     {"kind", "estimate"},
                     {"n", r.n},
                     {"c", r.c},
                     {"mean", r.mean},
                     {"selected", r.selected.spec().label()},
                     {"scores", scores},
                     {"f0_hat", r.f0_hat},
                     {"long_run_variance", r.long_run_variance},
                     {"se_hat", r.se_hat},
                     {"intervals", intervals}};
    if (const auto* ar = r.selected.ar_model()) {
        j["ar_coefficients"] = ar->phi();
        j["innovation_variance"] = ar->sigma2();
    }
    return j;
}

nlohmann::json to_json(const CoverageReport& r)
{
    const auto& cfg = r.config;
    nlohmann::json methods = nlohmann::json::array();
    for (const auto& mc : r.methods) {
        nlohmann::json cov = nlohmann::json::object();
        for (std::size_t i = 0; i < cfg.levels.size(); ++i) {
            cov[fixed(cfg.levels[i], 2)] = mc.coverage[i];
        }
        methods.push_back({{"method", std::string(to_string(mc.method))},
                           {"coverage", cov},
                           {"successes", mc.successes},
                           {"failures", mc.failures},
                           {"badness_95", optional_json(mc.badness)},
                           {"efficiency_95", optional_json(mc.efficiency)}});
    }
    nlohmann::json names = nlohmann::json::array();
    for (Method m : cfg.methods) names.push_back(std::string(to_string(m)));
    const auto& sel = r.selection;
    nlohmann::json selection{{"cv_c_decisions", sel.cv_c_decisions},
                             {"cv_c_ar_wins", sel.cv_c_ar_wins},
                             {"ar_win_rate", optional_json(sel.ar_win_rate())},
                             {"cv_ar_decisions", sel.cv_ar_decisions},
                             {"cv_ar_true_order", sel.cv_ar_true_order},
                             {"true_order_rate", optional_json(sel.true_order_rate())}};
    selection["true_order"] = sel.true_order ? nlohmann::json(*sel.true_order)
                                             : nlohmann::json(nullptr);
    return {{"schema_version", kSchemaVersion},
            {"kind", "coverage"},
            {"dgp", dgp_json(cfg.dgp)},
            {"replications", cfg.replications},
            {"seed", cfg.seed},
            {"c", cfg.c},
            {"parzen_max", cfg.parzen_max ? nlohmann::json(*cfg.parzen_max) : nlohmann::json(nullptr)},
            {"levels", cfg.levels},
            {"methods_requested", names},
            {"rng", r.rng},
            {"methods", methods},
            {"selection", selection}};
}

CoverageReport coverage_report_from_json(const nlohmann::json& j)
{
    try {
        if (j.at("schema_version").get<int>() != kSchemaVersion) {
            throw ConfigError("schema_version: unsupported value");
        }
        if (j.at("kind").get<std::string>() != "coverage") {
            throw ConfigError("kind: expected a coverage report");
        }
        CoverageReport r;
        auto& cfg = r.config;
        cfg.dgp = dgp_from_json(j.at("dgp"));
        cfg.replications = j.at("replications").get<std::size_t>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.c = j.at("c").get<double>();
        if (j.contains("parzen_max") && !j.at("parzen_max").is_null()) {
            cfg.parzen_max = j.at("parzen_max").get<std::size_t>();
        }
        cfg.levels = j.at("levels").get<std::vector<double>>();
        cfg.methods.clear();
        r.rng = j.at("rng").get<std::string>();
        for (const auto& m : j.at("methods")) {
            MethodCoverage mc;
            mc.method = parse_method(m.at("method").get<std::string>());
            cfg.methods.push_back(mc.method);
            for (double level : cfg.levels) {
                mc.coverage.push_back(m.at("coverage").at(fixed(level, 2)).get<double>());
            }
            mc.successes = m.at("successes").get<std::size_t>();
            mc.failures = m.at("failures").get<std::size_t>();
            r.methods.push_back(std::move(mc));
        }
        const auto& s = j.at("selection");
        r.selection.cv_c_decisions = s.at("cv_c_decisions").get<std::size_t>();
        r.selection.cv_c_ar_wins = s.at("cv_c_ar_wins").get<std::size_t>();
        r.selection.cv_ar_decisions = s.at("cv_ar_decisions").get<std::size_t>();
        r.selection.cv_ar_true_order = s.at("cv_ar_true_order").get<std::size_t>();
        r.selection.true_order = cfg.dgp.true_ar_order();
        attach_efficiency(r);
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("coverage report: ") + e.what());
    }
}

std::string estimate_text(const FdcvResult& r)
{
    std::ostringstream os;
    os << "n                 " << r.n << "\n"
       << "sample mean       " << fixed(r.mean, 6) << "\n"
       << "band exponent c   " << fixed(r.c, 2) << "\n"
       << "selected          " << r.selected.spec().label() << "\n"
       << "f(0) estimate     " << fixed(r.f0_hat, 6) << "\n"
       << "long-run variance " << fixed(r.long_run_variance, 6) << "\n"
       << "standard error    " << fixed(r.se_hat, 6) << "\n\n"
       << "candidate   CV score\n";
    for (const auto& s : r.all_scores) {
        os << pad(s.candidate.label(), 12)
           << (s.disqualified ? "disqualified (" + s.reason + ")" : fixed(s.score, 6)) << "\n";
    }
    os << "\nlevel   lower        upper\n";
    for (const auto& ci : r.intervals) {
        os << pad(level_name(ci.level), 8) << lpad(fixed(ci.lower, 6), 11) << "  "
           << lpad(fixed(ci.upper, 6), 11) << "\n";
    }
    return os.str();
}

std::string estimate_csv(const FdcvResult& r)
{
    std::ostringstream os;
    os << "field,value\n"
       << "n," << r.n << "\nmean," << fixed(r.mean, 10) << "\nc," << r.c << "\nselected,"
       << r.selected.spec().label() << "\nf0_hat," << fixed(r.f0_hat, 10)
       << "\nlong_run_variance," << fixed(r.long_run_variance, 10) << "\nse_hat,"
       << fixed(r.se_hat, 10) << "\n";
    for (const auto& s : r.all_scores) {
        os << "score " << s.candidate.label() << ","
           << (s.disqualified ? std::string("inf") : fixed(s.score, 10)) << "\n";
    }
    for (const auto& ci : r.intervals) {
        os << "lower " << level_name(ci.level) << "," << fixed(ci.lower, 10) << "\n"
           << "upper " << level_name(ci.level) << "," << fixed(ci.upper, 10) << "\n";
    }
    return os.str();
}

std::string coverage_text(const CoverageReport& r)
{
    const auto& cfg = r.config;
    std::ostringstream os;
    os << cfg.dgp.label() << ", n = " << cfg.dgp.n << ", c = " << fixed(cfg.c, 2) << ", "
       << cfg.replications << " replications, seed " << cfg.seed << "\n";
    os << pad("Method", 8);
    for (double l : cfg.levels) os << lpad(level_name(l), 8);
    os << lpad("B(95%)", 9) << lpad("e(95%)", 8) << lpad("failed", 8) << "\n";
    for (const auto& mc : r.methods) {
        os << pad(std::string(to_string(mc.method)), 8);
        for (double v : mc.coverage) os << lpad(fixed(100.0 * v, 1), 8);
        os << lpad(mc.badness ? fixed(*mc.badness, 3) : "-", 9)
           << lpad(mc.efficiency ? fixed(*mc.efficiency, 2) : "-", 8)
           << lpad(std::to_string(mc.failures), 8) << "\n";
    }
    if (const auto w = r.selection.ar_win_rate()) {
        os << "CV_C picked an AR candidate in " << fixed(100.0 * *w, 1) << "% of replications\n";
    }
    if (const auto t = r.selection.true_order_rate()) {
        os << "CV_AR picked the true order " << *r.selection.true_order << " in "
           << fixed(100.0 * *t, 1) << "% of replications\n";
    }
    return os.str();
}

std::string coverage_csv(const CoverageReport& r)
{
    std::ostringstream os;
    os << "process,n,c,method,level,coverage,successes,failures\n";
    for (const auto& mc : r.methods) {
        for (std::size_t i = 0; i < r.config.levels.size(); ++i) {
            os << '"' << r.config.dgp.label() << "\"," << r.config.dgp.n << "," << r.config.c << ","
               << to_string(mc.method) << "," << r.config.levels[i] << ","
               << fixed(mc.coverage[i], 6) << "," << mc.successes << "," << mc.failures << "\n";
        }
    }
    return os.str();
}

std::vector<ComparisonRow> compare(const ReproducePreset& preset,
                                   const std::vector<CoverageReport>& reports)
{
    const auto match = [&](const DgpSpec& d, double c) -> const CoverageReport* {
        for (const auto& r : reports) {
            if (same_process(r.config.dgp, d) && std::abs(r.config.c - c) < 1e-12) return &r;
        }
        return nullptr;
    };
    std::vector<ComparisonRow> rows;
    for (const auto& cell : preset.coverage) {
        const auto* r = match(cell.dgp, cell.c);
        if (r == nullptr || r->find(cell.method) == nullptr) continue;
        double observed = 0.0;
        try {
            observed = 100.0 * r->coverage(cell.method, cell.level);
        } catch (const std::out_of_range&) {
            continue;
        }
        rows.push_back({cell.dgp.label() + " n=" + std::to_string(cell.dgp.n), cell.c, cell.method,
                        "coverage@" + fixed(100.0 * cell.level, 0), cell.percent, observed});
    }
    for (const auto& cell : preset.efficiency) {
        const auto* r = match(cell.dgp, 0.8);
        if (r == nullptr) continue;
        const auto* mc = r->find(cell.method);
        if (mc == nullptr || !mc->efficiency) continue;
        rows.push_back({cell.dgp.label() + " n=" + std::to_string(cell.dgp.n), 0.8, cell.method,
                        "efficiency", cell.value, *mc->efficiency});
    }
    return rows;
}

std::string comparison_text(const std::vector<ComparisonRow>& rows)
{
    std::ostringstream os;
    os << pad("process", 36) << pad("c", 6) << pad("method", 8) << pad("quantity", 13)
       << lpad("published", 10) << lpad("observed", 10) << lpad("diff", 8) << "\n";
    for (const auto& row : rows) {
        const int digits = row.quantity == "efficiency" ? 2 : 1;
        os << pad(row.process, 36) << pad(fixed(row.c, 2), 6)
           << pad(std::string(to_string(row.method)), 8) << pad(row.quantity, 13)
           << lpad(fixed(row.reference, digits), 10) << lpad(fixed(row.observed, digits), 10)
           << lpad(fixed(row.deviation(), digits), 8) << "\n";
    }
    return os.str();
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows)
{
    std::ostringstream os;
    os << "process,c,method,quantity,published,observed,deviation\n";
    for (const auto& row : rows) {
        os << '"' << row.process << "\"," << row.c << "," << to_string(row.method) << ","
           << row.quantity << "," << row.reference << "," << fixed(row.observed, 4) << ","
           << fixed(row.deviation(), 4) << "\n";
    }
    return os.str();
}

nlohmann::json to_json(const std::vector<ComparisonRow>& rows)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& row : rows) {
        a.push_back({{"process", row.process},
                     {"c", row.c},
                     {"method", std::string(to_string(row.method))},
                     {"quantity", row.quantity},
                     {"published", row.reference},
                     {"observed", row.observed},
                     {"deviation", row.deviation()}});
    }
    return a;
}

}  // namespace fdcv
