#include "fdcv/config.hpp"

#include "fdcv/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace fdcv {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::string strip_comment(const std::string& line)
{
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, ',')) {
        auto t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

bool parse_double(std::string_view token, double& out)
{
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, out);
    return ec == std::errc() && ptr == end;
}

class Reader {
public:
    explicit Reader(const KeyValueConfig& cfg) : cfg_(cfg) {}

    bool has(const std::string& key) const { return find(key) != nullptr; }

    double real(const std::string& key, double fallback)
    {
        const auto* v = find(key);
        if (v == nullptr) return fallback;
        double d = 0.0;
        if (!parse_double(*v, d) || !std::isfinite(d)) fail(key, "expected a number");
        return d;
    }

    std::uint64_t count(const std::string& key, std::uint64_t fallback)
    {
        const auto* v = find(key);
        if (v == nullptr) return fallback;
        std::uint64_t u = 0;
        const auto* end = v->data() + v->size();
        const auto [ptr, ec] = std::from_chars(v->data(), end, u);
        if (ec != std::errc() || ptr != end) fail(key, "expected a non-negative integer");
        return u;
    }

    std::string text(const std::string& key, const std::string& fallback)
    {
        const auto* v = find(key);
        return v == nullptr ? fallback : *v;
    }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const
    {
        std::string where = cfg_.source;
        for (const auto& k : {key, "dgp." + key}) {
            if (auto it = cfg_.lines.find(k); it != cfg_.lines.end()) {
                where += ":" + std::to_string(it->second);
            }
        }
        throw ConfigError(where + ": " + key + ": " + what);
    }

    void reject_unknown(const std::set<std::string>& known) const
    {
        for (const auto& [k, v] : cfg_.values) {
            const std::string bare = k.rfind("dgp.", 0) == 0 ? k.substr(4) : k;
            if (!known.count(bare)) {
                throw ConfigError(cfg_.source + ":" + std::to_string(cfg_.lines.at(k))
                                  + ": unknown key '" + k + "'");
            }
        }
    }

private:
    const std::string* find(const std::string& key) const
    {
        if (auto it = cfg_.values.find(key); it != cfg_.values.end()) return &it->second;
        if (auto it = cfg_.values.find("dgp." + key); it != cfg_.values.end()) return &it->second;
        return nullptr;
    }

    const KeyValueConfig& cfg_;
};

}  // namespace

KeyValueConfig parse_key_values(std::istream& in, const std::string& source)
{
    KeyValueConfig cfg;
    cfg.source = source;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto body = trim(strip_comment(line));
        if (body.empty() || body.front() == '[') continue;  // blank, comment or section header
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source + ":" + std::to_string(number) + ": expected key = value");
        }
        const auto key = trim(body.substr(0, eq));
        auto value = trim(body.substr(eq + 1));
        if (key.empty()) throw ConfigError(source + ":" + std::to_string(number) + ": empty key");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
            value = value.substr(1, value.size() - 2);
        }
        if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
            value = value.substr(1, value.size() - 2);
        }
        if (cfg.values.count(key)) {
            throw ConfigError(source + ":" + std::to_string(number) + ": duplicate key '" + key
                              + "'");
        }
        cfg.values[key] = value;
        cfg.lines[key] = number;
    }
    return cfg;
}

KeyValueConfig load_key_values(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config file");
    return parse_key_values(in, path);
}

ExperimentConfig experiment_from_config(const KeyValueConfig& cfg)
{
    Reader r(cfg);
    r.reject_unknown({"schema_version", "family", "n", "phi", "psi", "alpha", "beta", "q",
                      "replications", "seed", "c", "threads", "levels", "methods", "parzen_max"});
    if (!r.has("schema_version")) r.fail("schema_version", "required field is missing");
    if (r.count("schema_version", 0) != 1) r.fail("schema_version", "only version 1 is supported");
    if (!r.has("family")) r.fail("family", "required field is missing");

    ExperimentConfig e;
    try {
        e.dgp.family = parse_dgp_family(r.text("family", ""));
    } catch (const ConfigError&) {
        r.fail("family", "unknown process family '" + r.text("family", "") + "'");
    }
    e.dgp.n = r.count("n", e.dgp.n);
    e.dgp.phi = r.real("phi", 0.0);
    e.dgp.psi = r.real("psi", 0.0);
    e.dgp.alpha = r.real("alpha", 0.0);
    e.dgp.beta = r.real("beta", 0.0);
    e.dgp.q = static_cast<int>(r.count("q", 2));
    e.replications = r.count("replications", e.replications);
    e.seed = r.count("seed", e.seed);
    e.c = r.real("c", e.c);
    e.threads = static_cast<int>(r.count("threads", 0));
    if (r.has("parzen_max")) {
        e.parzen_max = r.count("parzen_max", 0);
        if (*e.parzen_max < 1) r.fail("parzen_max", "must be at least 1");
    }
    if (r.has("levels")) {
        e.levels.clear();
        for (const auto& item : split_list(r.text("levels", ""))) {
            double d = 0.0;
            if (!parse_double(item, d)) r.fail("levels", "'" + item + "' is not a number");
            e.levels.push_back(d > 1.0 ? d / 100.0 : d);
        }
    }
    if (r.has("methods")) {
        e.methods.clear();
        for (const auto& item : split_list(r.text("methods", ""))) {
            try {
                e.methods.push_back(parse_method(item));
            } catch (const ConfigError&) {
                r.fail("methods", "unknown method '" + item + "'");
            }
        }
    }
    try {
        e.validate();
    } catch (const ConfigError& err) {
        throw ConfigError(cfg.source + ": " + err.what());
    }
    return e;
}

std::vector<double> read_series(std::istream& in, const std::string& source)
{
    std::vector<double> values;
    std::string line;
    std::size_t number = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++number;
        if (number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
        auto body = strip_comment(line);
        for (char& ch : body) {
            if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
        }
        std::istringstream is(body);
        std::string token;
        std::vector<double> row;
        bool bad = false;
        std::string bad_token;
        while (is >> token) {
            double d = 0.0;
            if (!parse_double(token, d)) {
                bad = true;
                bad_token = token;
                break;
            }
            if (!std::isfinite(d)) {
                throw DataError(source + ":" + std::to_string(number) + ": non-finite value '"
                                + token + "'");
            }
            row.push_back(d);
        }
        if (bad) {
            if (values.empty() && !header_seen) {
                header_seen = true;
                continue;
            }
            throw DataError(source + ":" + std::to_string(number) + ": cannot parse '" + bad_token
                            + "' as a number");
        }
        values.insert(values.end(), row.begin(), row.end());
    }
    return values;
}

std::vector<double> load_series(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw DataError(path + ": cannot open input file");
    return read_series(in, path);
}

}  // namespace fdcv
