#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <vector>

#include "pscale/cli.hpp"
#include "temp_dir.hpp"

using namespace pscale;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    args.insert(args.begin(), "pscale");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string& name) {
    const char* dir = std::getenv("PSCALE_TEST_DATA");
    return std::string(dir ? dir : "tests/data") + "/" + name;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s) n += c == '\n';
    return n;
}

std::string tiny_config(const TempDir& dir) {
    const auto path = dir.str("tiny.toml");
    spit(path, "[sweep]\nworkloads = [\"" + data("one_layer.csv") + "\"]\noutput_dir = \"" + dir.str("out") + "\"\n");
    return path;
}

}  // namespace

TEST_CASE("simulate") {
    auto r = cli({"simulate", "--workload", data("one_layer.csv"), "--pe", "4", "--grid", "2x2"});
    REQUIRE(r.code == 0);
    // banner, header, one layer, TOTAL, footer
    CHECK(count_lines(r.out) == 5);
    CHECK(r.out.find("L1") != std::string::npos);
    CHECK(r.out.find("TOTAL") != std::string::npos);

    r = cli({"simulate", "--workload", "preset:resnet18", "--pe", "256", "--grid", "16x16"});
    REQUIRE(r.code == 0);
    CHECK(count_lines(r.out) == 2 + 18 + 2);

    r = cli({"simulate", "--workload", data("one_layer.csv"), "--pe", "4", "--grid", "2x2", "--oracle"});
    CHECK(r.code == 0);
    CHECK(r.out.find("reference simulator") != std::string::npos);
    const auto analytic = cli({"simulate", "--workload", data("one_layer.csv"), "--pe", "4", "--grid", "2x2"});
    CHECK(r.out.substr(r.out.find('\n')) == analytic.out.substr(analytic.out.find('\n')));
}

TEST_CASE("simulate errors") {
    CHECK(cli({"simulate", "--workload", data("one_layer.csv"), "--pe", "16", "--grid", "3x5"}).code == 2);
    CHECK(cli({"simulate", "--workload", data("one_layer.csv"), "--pe", "16", "--grid", "4by4"}).code == 2);
    CHECK(cli({"simulate", "--pe", "16", "--grid", "4x4"}).code == 2);
    CHECK(cli({"simulate", "--workload", "/nonexistent.csv", "--pe", "4", "--grid", "2x2"}).code == 1);
    CHECK(cli({"simulate", "--workload", "preset:resnet18", "--pe", "4", "--grid", "2x2", "--oracle"}).code == 1);
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("feasibility") {
    auto r = cli({"feasibility"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    std::string row4;
    std::string row16;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string n;
        ls >> n;
        if (n == "4") row4 = line;
        if (n == "16") row16 = line;
    }
    CHECK(row4.ends_with("yes"));
    CHECK(row16.ends_with("no"));
    CHECK(r.out.find("max_monolithic_mesh = 11") != std::string::npos);

    r = cli({"feasibility", "--max-n", "1"});
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 1 + 1 + 2);
    CHECK(cli({"feasibility", "--config", "/missing.toml"}).code == 1);
}

TEST_CASE("sweep writes a deterministic bundle and report re-derives it") {
    TempDir dir;
    const auto config = tiny_config(dir);
    auto first = cli({"sweep", "--config", config});
    REQUIRE(first.code == 0);
    const auto out = dir.path() / "out";
    for (const char* f : {"per_layer.csv", "summary.csv", "eta.csv", "comparison.csv", "summary.json",
                          "plotdata_util.csv", "plotdata_traffic.csv"})
        CHECK(std::filesystem::exists(out / f));
    // 64,128,256,512,1024 have 7+8+9+10+11 divisor topologies; one layer each.
    CHECK(count_lines(slurp(out / "per_layer.csv")) == 1 + 45);
    CHECK(count_lines(slurp(out / "eta.csv")) == 1 + 5);

    const auto summary = slurp(out / "summary.csv");
    const auto json = slurp(out / "summary.json");
    REQUIRE(cli({"sweep", "--config", config}).code == 0);
    CHECK(slurp(out / "summary.csv") == summary);
    CHECK(slurp(out / "summary.json") == json);

    const auto best = cli({"report", "--input", out.string(), "--best"});
    REQUIRE(best.code == 0);
    CHECK(first.out.find(best.out) == 0);
    CHECK(cli({"report", "--input", out.string()}).out == summary);
    CHECK(cli({"report", "--input", out.string(), "--format", "json"}).out == json);
    const auto eta = cli({"report", "--input", out.string(), "--eta"});
    CHECK(first.out.find(eta.out) != std::string::npos);

    auto layers = slurp(out / "per_layer.csv");
    layers.replace(layers.rfind(",") + 1, 1, "?");
    spit(out / "per_layer.csv", layers);
    const auto corrupt = cli({"report", "--input", out.string()});
    CHECK(corrupt.code == 1);
    CHECK(corrupt.err.find("column 25") != std::string::npos);
}

TEST_CASE("sweep errors and config discovery") {
    CHECK(cli({"sweep", "--config", "missing.toml"}).code == 1);
    CHECK(cli({"report", "--input", "/nonexistent_dir"}).code == 1);
    CHECK(cli({"report", "--input", "/tmp", "--format", "xml"}).code == 2);

    TempDir dir;
    const auto config = tiny_config(dir);
    spit(dir.path() / "blocker", "x");
    CHECK(cli({"sweep", "--config", config, "--output", dir.str("blocker/sub")}).code == 1);

    ::setenv("PSCALE_CONFIG", config.c_str(), 1);
    const auto r = cli({"sweep"});
    ::unsetenv("PSCALE_CONFIG");
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(dir.path() / "out" / "summary.json"));
}
