#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

// End-to-end runs of the installed binary: every invocation writes its report
// into a fresh directory and the tests inspect exit code, stdout, stderr and
// the files left behind.

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
    fs::path dir;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CliRun run_cli(const std::string& args) {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / ("twistcurve_cli_" + std::to_string(::getpid()) +
                                                "_" + std::to_string(counter++));
    fs::create_directories(dir);
    std::string cmd = std::string(TWISTCURVE_BIN) + " " + args + " --out " + dir.string() +
                      " > " + (dir / "stdout.txt").string() +
                      " 2> " + (dir / "stderr.txt").string();
    int status = std::system(cmd.c_str());
    CliRun r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(dir / "stdout.txt");
    r.err = slurp(dir / "stderr.txt");
    r.dir = dir;
    return r;
}

json report_of(const CliRun& r) { return json::parse(slurp(r.dir / "report.json")); }

}  // namespace

TEST_CASE("eval writes a report and a csv") {
    auto r = run_cli("eval --deterministic");
    REQUIRE(r.exit_code == 0);
    json rep = report_of(r);
    CHECK(rep["command"] == "eval");
    CHECK(rep["version"] == "0.1.0");
    CHECK(rep["wall_ms"] == 0.0);
    CHECK(rep["config"]["map"]["degree"] == 4);
    CHECK(rep["result"]["points"] == 4096);
    CHECK(rep["result"]["csv_path"] == "alpha.csv");
    CHECK(rep["result"]["alpha_min"].get<double>() ==
          doctest::Approx(-1.0).epsilon(1e-9));

    std::string csv = slurp(r.dir / "alpha.csv");
    CHECK(csv.rfind("x,alpha,tail_radius\n", 0) == 0);
    std::size_t lines = std::size_t(std::count(csv.begin(), csv.end(), '\n'));
    CHECK(lines == 4097);

    // stdout carries the same report text
    CHECK(r.out == slurp(r.dir / "report.json"));
}

TEST_CASE("deterministic runs are byte-identical") {
    auto a = run_cli("eval --deterministic --set eval.points=64");
    auto b = run_cli("eval --deterministic --set eval.points=64");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(slurp(a.dir / "report.json") == slurp(b.dir / "report.json"));
    CHECK(slurp(a.dir / "alpha.csv") == slurp(b.dir / "alpha.csv"));
}

TEST_CASE("set and seed overrides reach the effective config") {
    auto r = run_cli("eval --deterministic --seed 42"
                     " --set map.kind=sine_perturbed --set map.degree=8"
                     " --set map.amplitude=0.1 --set eval.points=128");
    REQUIRE(r.exit_code == 0);
    json rep = report_of(r);
    CHECK(rep["config"]["map"]["kind"] == "sine_perturbed");
    CHECK(rep["config"]["map"]["degree"] == 8);
    CHECK(rep["config"]["map"]["amplitude"] == 0.1);
    CHECK(rep["config"]["seeds"]["rng_seed"] == 42);
    CHECK(rep["result"]["points"] == 128);
}

TEST_CASE("config file and overrides compose") {
    fs::path cfg_path = fs::temp_directory_path() /
                        ("twistcurve_cfg_" + std::to_string(::getpid()) + ".json");
    std::ofstream(cfg_path) << R"({"map": {"degree": 3}, "twist": {"theta": 0.7}})";
    auto r = run_cli("eval --deterministic --config " + cfg_path.string() +
                     " --set observable.kind=constant --set eval.points=16");
    REQUIRE(r.exit_code == 0);
    json rep = report_of(r);
    CHECK(rep["config"]["map"]["degree"] == 3);
    CHECK(rep["config"]["twist"]["theta"] == 0.7);
    CHECK(rep["config"]["observable"]["kind"] == "constant");
    // constant forcing has a constant solution: -1 / (3^0.7 - 1)
    CHECK(rep["result"]["alpha_min"].get<double>() ==
          doctest::Approx(-0.86380455739651874).epsilon(1e-9));
    CHECK(rep["result"]["alpha_max"].get<double>() ==
          doctest::Approx(-0.86380455739651874).epsilon(1e-9));
}

TEST_CASE("negative analyses exit 1") {
    auto low = run_cli("hardy --deterministic --set hardy.degree=4");
    CHECK(low.exit_code == 1);
    CHECK(report_of(low)["result"]["above_threshold"] == false);
    CHECK(report_of(low)["result"]["min_degree"] == 26);

    auto high = run_cli("hardy --deterministic");
    CHECK(high.exit_code == 0);
    CHECK(report_of(high)["result"]["above_threshold"] == true);

    // degree 4 fails the audit, degree 2048 passes it
    auto weak = run_cli("condition-a --deterministic");
    CHECK(weak.exit_code == 1);
    CHECK(report_of(weak)["result"]["passes_a"] == false);

    auto strong = run_cli("condition-a --deterministic --set map.degree=2048");
    CHECK(strong.exit_code == 0);
    json rep = report_of(strong);
    CHECK(rep["result"]["passes_a"] == true);
    CHECK(rep["result"]["regime"] == "linear_k1");
    CHECK(rep["result"]["c"] == 0.75);
}

TEST_CASE("witness run embeds its audit") {
    auto r = run_cli("witness --deterministic --set map.degree=2048");
    REQUIRE(r.exit_code == 0);
    json res = report_of(r)["result"];
    CHECK(res["passed"] == true);
    CHECK(res["n"] == 1);
    CHECK(res["margin"].get<double>() > 0.0);
    CHECK(res["perturbation"] == 0.0);
    CHECK(res["condition_a"]["passes_a"] == true);
}

TEST_CASE("missing output directories are created") {
    fs::path nested = fs::temp_directory_path() /
                      ("twistcurve_mkdir_" + std::to_string(::getpid())) / "a" / "b";
    fs::remove_all(nested);
    std::string cmd = std::string(TWISTCURVE_BIN) +
                      " eval --deterministic --set eval.points=8 --out " + nested.string() +
                      " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    CHECK((WIFEXITED(status) && WEXITSTATUS(status) == 0));
    CHECK(fs::exists(nested / "report.json"));
    CHECK(fs::exists(nested / "alpha.csv"));
}

TEST_CASE("usage and config failures exit 2") {
    CHECK(run_cli("eval --set twist.theta=1.5").exit_code == 2);
    auto bad_key = run_cli("eval --set map.degre=4");
    CHECK(bad_key.exit_code == 2);
    CHECK(bad_key.err.find("map.degre") != std::string::npos);

    CHECK(run_cli("eval --config /nonexistent/config.json").exit_code == 2);

    fs::path broken = fs::temp_directory_path() /
                      ("twistcurve_broken_" + std::to_string(::getpid()) + ".json");
    std::ofstream(broken) << "{ not json";
    auto parse_fail = run_cli("eval --config " + broken.string());
    CHECK(parse_fail.exit_code == 2);
    CHECK(parse_fail.err.rfind("error:", 0) == 0);

    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);

    auto help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK(help.out.find("eval") != std::string::npos);
}
