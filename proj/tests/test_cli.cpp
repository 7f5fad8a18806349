#include "injeqt/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

namespace fs = std::filesystem;

namespace
{

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result
cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "injeqt");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = injeqt::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string
slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const std::string kAdder = std::string(INJEQT_BENCHMARKS_DIR) + "/adder.qasm";

fs::path
scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("injeqt_cli_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("analyze")
{
    const auto r = cli({"analyze", "--factory", "cultivation", "--c", "100"});
    CHECK(r.code == 0);
    CHECK(r.out.find("alpha") != std::string::npos);
    const auto j = cli({"analyze", "--factory", "star", "--json"});
    CHECK(j.code == 0);
    CHECK(nlohmann::json::parse(j.out)["factory"] == "star");
}

TEST_CASE("sweep writes one row per policy, R and trial, byte-identically")
{
    const fs::path a = scratch("sweep_a"), b = scratch("sweep_b");
    const std::vector<std::string> common = {"sweep", "--circuit", kAdder, "--factory", "distillation", "--tech",
                                             "transversal", "--r", "1..20", "--trials", "20", "--seed", "7"};
    auto args_a = common;
    args_a.insert(args_a.end(), {"--out", a.string()});
    auto args_b = common;
    args_b.insert(args_b.end(), {"--out", b.string(), "--threads", "1"});
    REQUIRE(cli(args_a).code == 0);
    REQUIRE(cli(args_b).code == 0);
    const std::string csv = slurp(a / "results.csv");
    CHECK(csv == slurp(b / "results.csv"));
    CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 20 * 20);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("run with a timeline dump")
{
    const fs::path d = scratch("run");
    const auto r = cli({"run", "--circuit", kAdder, "--policy", "tdg", "--trials", "3", "--out", d.string(),
                        "--timeline-dump", (d / "tl.csv").string()});
    CHECK(r.code == 0);
    CHECK(fs::exists(d / "results.csv"));
    CHECK(slurp(d / "tl.csv").rfind("start,duration,kind,resource,rotation,error_contrib", 0) == 0);
    fs::remove_all(d);
}

TEST_CASE("compare with an Rz-state candidate")
{
    const auto r = cli({"compare", "--circuit", kAdder, "--injeqt-factory", "star", "--r", "1..4", "--trials", "4",
                        "--json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["candidate"] == "injeqt/star/surgery");
    CHECK(j["improvement"].contains("spacetime"));
}

TEST_CASE("exit codes")
{
    CHECK(cli({}).code == 2);
    CHECK(cli({"sweep", "--circuit", kAdder, "--bogus"}).code == 2);
    CHECK(cli({"run", "--circuit", kAdder, "--factory", "magic"}).code == 2);
    CHECK(cli({"run", "--circuit", kAdder, "--r", "0"}).code == 2);
    CHECK(cli({"run", "--circuit", kAdder, "--r", "1..3"}).code == 2);
    const auto missing = cli({"run", "--circuit", "/nonexistent.qasm"});
    CHECK(missing.code == 1);
    CHECK(std::count(missing.err.begin(), missing.err.end(), '\n') == 1);
    CHECK(cli({"run", "--circuit", kAdder, "--policy", "tdg", "--factory", "star"}).code == 1);
    const auto help = cli({"sweep", "--help"});
    CHECK(help.code == 0);
    for (const char* flag : {"--circuit", "--config", "--factory", "--tech", "--policy", "--r", "--trials", "--seed",
                             "--eps-synth", "--out", "--json"})
        CHECK(help.out.find(flag) != std::string::npos);
}
