#include "oracles.hpp"

#include "fdcv/cli.hpp"
#include "fdcv/config.hpp"
#include "fdcv/error.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace fdcv;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch()
{
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("fdcv_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path write(const std::string& name, const std::string& body)
{
    const auto p = scratch() / name;
    std::ofstream(p) << body;
    return p;
}

fs::path series_file(const std::string& name, const std::vector<double>& x)
{
    std::ostringstream os;
    os.precision(17);
    for (double v : x) os << v << "\n";
    return write(name, os.str());
}

}  // namespace

TEST_CASE("usage errors exit with 2")
{
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"estimate"}).code == kExitUsage);
    CHECK(cli({"estimate", "--input", "x", "--restriction", "some"}).code == kExitUsage);
    CHECK(cli({"estimate", "--input", "x", "--format", "xml"}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("estimate on an AR(1) series")
{
    const auto path = series_file("ar1.txt", oracle::ar_path({0.9}, 50, 3));
    const auto r = cli({"estimate", "--input", path.string(), "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("schema_version") == 1);
    CHECK(j.at("n") == 50);
    CHECK(j.at("scores").size() == 9);
    CHECK(j.at("se_hat").get<double>() > 0.0);
    CHECK(j.at("intervals").size() == 3);

    const auto ar = cli({"estimate", "--input", path.string(), "--format", "json", "--restriction", "ar-only"});
    REQUIRE(ar.code == kExitOk);
    CHECK(nlohmann::json::parse(ar.out).at("scores").size() == 6);

    const auto wide = cli({"estimate", "--input", path.string(), "--format", "json", "--parzen-max", "6"});
    REQUIRE(wide.code == kExitOk);
    CHECK(nlohmann::json::parse(wide.out).at("scores").size() == 12);
}

TEST_CASE("estimate formats and output directory")
{
    const auto path = series_file("wn.txt", oracle::gaussian(80, 4));
    const auto dir = scratch() / "est_out";
    const auto text = cli({"estimate", "--input", path.string(), "--output-dir", dir.string()});
    REQUIRE(text.code == kExitOk);
    CHECK(text.out.find("standard error") != std::string::npos);
    CHECK(fs::exists(dir / "estimate.txt"));
    const auto csv = cli({"estimate", "--input", path.string(), "--format", "csv"});
    CHECK(csv.out.rfind("field,value", 0) == 0);
}

TEST_CASE("estimate is unchanged by a shift of the data")
{
    auto x = oracle::ar_path({0.6}, 60, 8);
    const auto a = cli({"estimate", "--input", series_file("a.txt", x).string(), "--format", "json"});
    for (double& v : x) v += 1e6;
    const auto b = cli({"estimate", "--input", series_file("b.txt", x).string(), "--format", "json"});
    REQUIRE(a.code == kExitOk);
    REQUIRE(b.code == kExitOk);
    const auto ja = nlohmann::json::parse(a.out);
    const auto jb = nlohmann::json::parse(b.out);
    CHECK(ja.at("selected") == jb.at("selected"));
    CHECK(jb.at("se_hat").get<double>() == doctest::Approx(ja.at("se_hat").get<double>()).epsilon(1e-6));
}

TEST_CASE("estimate data errors exit with 3")
{
    CHECK(cli({"estimate", "--input", (scratch() / "missing.txt").string()}).code == kExitData);
    const auto bad = write("bad.txt", "1\n2\n3\nfoo\n5\n");
    const auto r = cli({"estimate", "--input", bad.string()});
    CHECK(r.code == kExitData);
    CHECK(r.err.find(":4:") != std::string::npos);
    CHECK(cli({"estimate", "--input", write("short.txt", "1\n2\n3\n").string()}).code == kExitData);
    CHECK(cli({"estimate", "--input", write("nan.txt", "1\n2\nnan\n4\n5\n6\n7\n8\n9\n").string()}).code == kExitData);
    const auto path = series_file("ok.txt", oracle::gaussian(30, 1));
    CHECK(cli({"estimate", "--input", path.string(), "--c", "1.5"}).code == kExitUsage);
}

TEST_CASE("series reader")
{
    std::istringstream in("\xEF\xBB\xBFvalue\n1.5, 2.5\n# note\n3;4\t5\n\n6 # trailing\n");
    const auto x = read_series(in, "mem");
    CHECK(x == std::vector<double>{1.5, 2.5, 3, 4, 5, 6});
    std::istringstream twice("a\nb\n1\n");
    CHECK_THROWS_AS((void)read_series(twice, "mem"), DataError);
    std::istringstream inf("1\ninf\n");
    CHECK_THROWS_AS((void)read_series(inf, "mem"), DataError);
}

TEST_CASE("key-value config parsing")
{
    std::istringstream in("schema_version = 1\n[dgp]\ndgp.family = \"ar1\"  # comment\nphi = 0.5\nn = 60\n"
                          "levels = [90, 95]\nmethods = CV_C, AM-PW\nreplications = 12\nparzen_max = 6\n");
    const auto cfg = experiment_from_config(parse_key_values(in, "mem"));
    CHECK(cfg.dgp.family == DgpFamily::AR1);
    CHECK(cfg.dgp.phi == 0.5);
    CHECK(cfg.dgp.n == 60);
    CHECK(cfg.levels == std::vector<double>{0.90, 0.95});
    CHECK(cfg.methods == std::vector<Method>{Method::CvC, Method::AmPw});
    CHECK(cfg.replications == 12);
    CHECK(cfg.parzen_max == std::size_t{6});

    auto parse = [](const std::string& text) {
        std::istringstream s(text);
        return experiment_from_config(parse_key_values(s, "mem"));
    };
    CHECK_THROWS_AS(parse("family = ar1\n"), ConfigError);
    CHECK_THROWS_AS(parse("schema_version = 2\nfamily = ar1\n"), ConfigError);
    CHECK_THROWS_AS(parse("schema_version = 1\nfamily = ar1\ncolour = red\n"), ConfigError);
    CHECK_THROWS_AS(parse("schema_version = 1\nfamily = ar1\nphi = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse("schema_version = 1\nfamily = ar1\nn = many\n"), ConfigError);
    CHECK_THROWS_AS(parse("schema_version = 1\nfamily = ar1\nn = 50\nn = 60\n"), ConfigError);
    CHECK_THROWS_AS(parse("schema_version = 1\nfamily = ar1\nno equals sign\n"), ConfigError);
    CHECK_THROWS_AS(parse("schema_version = 1\nfamily = ar1\nparzen_max = 0\n"), ConfigError);
    try {
        (void)parse("schema_version = 1\nfamily = ar1\n\nphi = x\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("mem:4") != std::string::npos);
    }
}

TEST_CASE("simulate writes its reports")
{
    const auto cfg = write("sim.cfg", "schema_version = 1\nfamily = white-noise\nn = 40\nreplications = 10\nseed = 3\n");
    const auto dir = scratch() / "sim_out";
    const auto r = cli({"simulate", "--config", cfg.string(), "--output-dir", dir.string(), "--format", "json"});
    REQUIRE(r.code == kExitOk);
    CHECK(fs::exists(dir / "simulate.json"));
    CHECK(fs::exists(dir / "simulate.txt"));
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("replications") == 10);
    CHECK(j.at("methods").size() == 5);

    const auto again = cli({"simulate", "--config", cfg.string(), "--output-dir", dir.string(), "--format", "json"});
    CHECK(again.out == r.out);

    CHECK(cli({"simulate", "--config", (scratch() / "nope.cfg").string()}).code == kExitUsage);
    const auto bad = write("bad.cfg", "schema_version = 1\nfamily = ar1\nphi = 2\n");
    CHECK(cli({"simulate", "--config", bad.string()}).code == kExitUsage);
}

TEST_CASE("reproduce argument checks")
{
    CHECK(cli({"reproduce", "12"}).code == kExitUsage);
    CHECK(cli({"reproduce", "1", "--c", "0.5"}).code == kExitUsage);
    CHECK(cli({"reproduce", "1", "--parzen-max", "5"}).code == kExitUsage);
}

TEST_CASE("reproduce writes a comparison")
{
    const auto dir = scratch() / "rep_out";
    const auto r = cli({"reproduce", "2", "--replications", "3", "--output-dir", dir.string(), "--format", "json"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("table") == "2");
    CHECK_FALSE(j.at("comparison").empty());
    CHECK(fs::exists(dir / "reproduce_2.json"));
    CHECK(fs::exists(dir / "reproduce_2.txt"));
}

TEST_CASE("the installed binary maps errors to exit codes")
{
    const char* exe = std::getenv("FDCV_CLI");
    if (exe == nullptr) return;
    auto status = [&](const std::string& args) {
        const int raw = std::system((std::string(exe) + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    const auto good = series_file("bin.txt", oracle::gaussian(40, 2));
    CHECK(status("estimate --input " + good.string()) == 0);
    CHECK(status("estimate --input " + (scratch() / "absent.txt").string()) == 3);
    CHECK(status("estimate") == 2);
    CHECK(status("reproduce 99") == 2);
}
