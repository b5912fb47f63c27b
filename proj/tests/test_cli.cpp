#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <doctest.h>
#include <json.hpp>

#include "beltrami/cli.hpp"

using namespace beltrami;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "beltrami");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("check on a sphere passes and reports Lambda = 2I")
{
    const Outcome o = invoke({"check", "--surface", "sphere", "--radius", "2", "--grid", "6x6", "--format", "json",
                              "--no-timestamp"});
    CHECK(o.code == kExitOk);
    const json j = json::parse(o.out);
    CHECK(j["schema"] == 1);
    CHECK(j["fit"]["verdict"] == "SphereType");
    CHECK(j["fit"]["lambda"][0].get<double>() == doctest::Approx(2.0));
    CHECK(j["points"].size() == 36);
    CHECK(j["identities"]["passed"] == true);
    CHECK_FALSE(j.contains("timestamp"));
}

TEST_CASE("fit-lambda exit codes follow the verdict and --expect")
{
    CHECK(invoke({"fit-lambda", "--surface", "quadric2", "--a", "1", "--b", "1"}).code == kExitCheckFailed);
    CHECK(invoke({"fit-lambda", "--surface", "quadric2", "--a", "1", "--b", "1", "--expect",
                  "NotCoordinateFiniteType"})
              .code == kExitOk);
    CHECK(invoke({"fit-lambda", "--surface", "helicoid", "--c5", "2"}).code == kExitOk);
    CHECK(invoke({"fit-lambda", "--surface", "helicoid", "--expect", "SphereType"}).code == kExitCheckFailed);
}

TEST_CASE("verify-paper runs every criterion")
{
    const Outcome o = invoke({"verify-paper", "--all", "--seed", "7", "--format", "json", "--no-timestamp"});
    CHECK(o.code == kExitOk);
    const json j = json::parse(o.out);
    CHECK(j["criteria"].size() == 10);
    CHECK(j["passed"] == true);
}

TEST_CASE("reports are deterministic for a fixed seed")
{
    const std::vector<std::string> args{"verify-paper", "--criterion", "5", "--criterion", "9", "--seed", "3",
                                        "--format", "json", "--no-timestamp"};
    CHECK(invoke(args).out == invoke(args).out);
    const std::vector<std::string> fit{"fit-lambda", "--surface", "catenoid", "--format", "json", "--no-timestamp"};
    CHECK(invoke(fit).out == invoke(fit).out);
    const Outcome stamped = invoke({"fit-lambda", "--surface", "catenoid", "--format", "json"});
    CHECK(json::parse(stamped.out).contains("timestamp"));
}

TEST_CASE("configuration errors exit with 2")
{
    CHECK(invoke({}).code == kExitConfigError);
    CHECK(invoke({"frobnicate"}).code == kExitConfigError);
    CHECK(invoke({"check", "--surface", "torus"}).code == kExitConfigError);
    CHECK(invoke({"check", "--grid", "2x2"}).code == kExitConfigError);
    CHECK(invoke({"check", "--grid", "six"}).code == kExitConfigError);
    CHECK(invoke({"check", "--tau", "-1"}).code == kExitConfigError);
    CHECK(invoke({"check", "--surface", "sphere", "--a", "1"}).code == kExitConfigError);
    CHECK(invoke({"fit-lambda", "--expect", "Maybe"}).code == kExitConfigError);
    CHECK(invoke({"verify-paper", "--criterion", "11"}).code == kExitConfigError);
    CHECK(invoke({"ruled-coeffs", "--surface", "sphere"}).code == kExitConfigError);
    const Outcome o = invoke({"check", "--domain", "1,0,0,1"});
    CHECK(o.code == kExitConfigError);
    CHECK(o.err.find("domain") != std::string::npos);
}

TEST_CASE("geometric failures exit with 1")
{
    const Outcome o = invoke({"check", "--surface", "plane"});
    CHECK(o.code == kExitCheckFailed);
    CHECK(o.err.find("InsufficientSamples") != std::string::npos);
}

TEST_CASE("environment overrides tolerance defaults")
{
    setenv("BELTRAMI_TAU", "10", 1);
    const Outcome loose = invoke({"fit-lambda", "--surface", "quadric2", "--format", "json", "--no-timestamp"});
    setenv("BELTRAMI_TAU", "oops", 1);
    const Outcome broken = invoke({"fit-lambda"});
    unsetenv("BELTRAMI_TAU");
    CHECK(loose.code == kExitOk);
    CHECK(json::parse(loose.out)["fit"]["tau"] == 10.0);
    CHECK(broken.code == kExitConfigError);
}

TEST_CASE("csv outputs carry a header row")
{
    const Outcome q = invoke({"quadric-table", "--family", "quadric2", "--format", "csv"});
    CHECK(q.code == kExitOk);
    std::istringstream in(q.out);
    std::string line;
    std::getline(in, line);
    CHECK(line.rfind("family,a,b,c,verdict", 0) == 0);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    CHECK(rows == 9);
    CHECK(q.out.find('\r') == std::string::npos);

    const Outcome f = invoke({"fit-lambda", "--surface", "sphere", "--format", "csv"});
    CHECK(f.out.rfind("surface,family,mode,l11", 0) == 0);
}

TEST_CASE("ruled-coeffs and config files")
{
    const Outcome r = invoke({"ruled-coeffs", "--surface", "ruled", "--ruling", "small-circle", "--s", "0.8",
                              "--format", "json", "--no-timestamp"});
    CHECK(r.code == kExitOk);
    CHECK(json::parse(r.out)["report"]["max_deviation"].get<double>() < 1e-4);

    const std::string path = "beltrami_cli_config.json";
    {
        std::ofstream out(path);
        out << R"({"name": "q", "family": "quadric1", "params": {"a": -1, "b": -1, "c": 4}})";
    }
    const Outcome c = invoke({"fit-lambda", "--config", path, "--expect", "SphereType"});
    std::remove(path.c_str());
    CHECK(c.code == kExitOk);
    CHECK(c.out.find("SphereType") != std::string::npos);
}

TEST_CASE("affine mode through the CLI")
{
    const Outcome o = invoke({"fit-lambda", "--surface", "sphere", "--center", "0,0,5", "--mode", "affine",
                              "--format", "json", "--no-timestamp"});
    CHECK(o.code == kExitOk);
    CHECK(json::parse(o.out)["fit"]["lambda"].size() == 12);
}

#ifdef BELTRAMI_CLI_PATH
TEST_CASE("installed binary honours the exit-code contract")
{
    auto status = [](const std::string& args) {
        const std::string cmd = std::string(BELTRAMI_CLI_PATH) + " " + args + " > /dev/null 2>&1";
        const int raw = std::system(cmd.c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("check --surface sphere --radius 2 --grid 6x6") == 0);
    CHECK(status("fit-lambda --surface quadric2 --a 1 --b 1") == 1);
    CHECK(status("fit-lambda --surface quadric2 --a 1 --b 1 --expect NotCoordinateFiniteType") == 0);
    CHECK(status("check --grid 1x1") == 2);
    CHECK(status("--help") == 0);
}
#endif
