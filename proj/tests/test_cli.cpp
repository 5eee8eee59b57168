#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "hwf/commands.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hwf;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

const fs::path& workdir()
{
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("hwf_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

std::string slurp(const std::string& file)
{
    std::ifstream is(file);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::vector<std::string> body_lines(const std::string& file)
{
    std::vector<std::string> lines;
    std::istringstream is(slurp(file));
    std::string line;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    return lines;
}

std::string built(const std::string& form, int prec)
{
    const std::string file = path(form + "_" + std::to_string(prec) + ".coef");
    if (!fs::exists(file)) REQUIRE(run({"build", "--form", form, "--prec", std::to_string(prec), "--out", file}).code == 0);
    return file;
}

}  // namespace

TEST_CASE("build named forms")
{
    const auto d = body_lines(built("delta", 100));
    REQUIRE(d.size() >= 3);
    CHECK(d[0] == "1\t1");
    CHECK(d[1] == "4\t-56");
    CHECK(d[2] == "5\t120");

    const auto g = body_lines(built("g", 60));
    CHECK(g[0] == "3\t1");
    CHECK(g[1] == "4\t-1");

    const std::string tau = path("tau.coef");
    CHECK(run({"build", "--form", "eta(1)^24", "--prec", "5", "--out", tau}).code == 0);
    const auto t = body_lines(tau);
    CHECK(t == std::vector<std::string>{"1\t1", "2\t-24", "3\t252", "4\t-1472", "5\t4830"});
    CHECK(slurp(tau).find("#weight 24/2\n#level 1\n#character trivial:1\n") != std::string::npos);
}

TEST_CASE("build errors")
{
    CHECK(run({"build", "--form", "eta(1", "--prec", "5", "--out", path("x")}).code == cli::kExitUsage);
    CHECK(run({"build", "--form", "eta(1)", "--prec", "5", "--out", path("x")}).code == cli::kExitUsage);
    CHECK(run({"build", "--form", "1/3*theta(1)", "--prec", "5", "--out", path("x")}).code == cli::kExitUsage);
    CHECK(run({"build", "--form", "delta", "--prec", "200000", "--out", path("x")}).code == cli::kExitUsage);
    CHECK(run({"build", "--form", "delta", "--out", path("x")}).code == cli::kExitUsage);
    CHECK(run({}).code == cli::kExitUsage);
    CHECK(run({"frobnicate"}).code == cli::kExitUsage);
    CHECK(run({"--help"}).code == cli::kExitOk);
}

TEST_CASE("lift")
{
    const std::string out = path("delta_lift.coef");
    CHECK(run({"lift", "--in", built("delta", 10000), "--t", "1", "--out", out}).code == 0);
    const std::string text = slurp(out);
    CHECK(text.find("#weight 24/2\n#level 2\n#character trivial:2\n#precision 100\n#offset 1\n1\t1\n2\t-56\n3\t252\n") !=
          std::string::npos);

    const std::string gl = path("g_lift.coef");
    CHECK(run({"lift", "--in", built("g", 900), "--t", "3", "--out", gl}).code == 0);
    CHECK(body_lines(gl)[0] == "1\t1");

    CHECK(run({"lift", "--in", built("delta", 100), "--t", "4", "--out", out}).code == cli::kExitUsage);
    CHECK(run({"lift", "--in", path("missing.coef"), "--t", "1", "--out", out}).code == cli::kExitUsage);
}

TEST_CASE("hecke")
{
    const Result d = run({"hecke", "--in", built("delta", 1000), "--op", "tsq", "--p", "3", "--verify-eigen"});
    REQUIRE(d.code == 0);
    const json j = json::parse(d.out);
    CHECK(j["schema"] == "hwf-eigen/1");
    CHECK(j["lambda"] == 252);
    CHECK(j["is_eigen"] == true);
    CHECK(j["deligne"] == true);
    CHECK(j["elementary_bound"] == true);
    CHECK(j["satake"]["norm"] == 177147);

    const Result g = run({"hecke", "--in", built("g", 900), "--op", "tsq", "--p", "3", "--verify-eigen"});
    REQUIRE(g.code == 0);
    CHECK(json::parse(g.out)["lambda"] == -1);

    const Result bad = run({"hecke", "--in", built("delta", 100), "--op", "tsq", "--p", "2"});
    CHECK(bad.code == cli::kExitUsage);
    CHECK(bad.err.find("p divides level") != std::string::npos);

    const Result tp = run({"hecke", "--in", built("Delta", 100), "--op", "tp", "--p", "2", "--verify-eigen"});
    REQUIRE(tp.code == 0);
    CHECK(json::parse(tp.out)["lambda"] == -24);

    const std::string u = path("u.coef");
    CHECK(run({"hecke", "--in", built("g", 60), "--op", "u", "--p", "4", "--out", u}).code == 0);
    CHECK(body_lines(u)[0] == "1\t-1");

    const Result text = run({"hecke", "--in", built("delta", 100), "--op", "tsq", "--p", "3"});
    CHECK(text.code == 0);
    CHECK(text.out.find("#precision 11\n#offset 1\n1\t252\n") != std::string::npos);

    // A form that is not an eigenform
    const std::string mix = path("mix.coef");
    CHECK(run({"build", "--form", "eta(1)^24 + E4(1)^3", "--prec", "100", "--out", mix}).code == 0);
    CHECK(run({"hecke", "--in", mix, "--op", "tp", "--p", "2", "--verify-eigen"}).code == cli::kExitVerificationFailed);
    CHECK(run({"hecke", "--in", mix, "--op", "sq", "--p", "2"}).code == cli::kExitUsage);
}

TEST_CASE("signs")
{
    const Result d = run({"signs", "--in", built("delta", 10000), "--stats", "tot,fund", "--X-list", "10,10000"});
    REQUIRE(d.code == 0);
    CHECK(d.out == "X,R_tot,R_fund\n10,0.600,0.667\n10000,0.504600,0.501643\n");

    const Result g = run({"signs", "--in", built("g", 100), "--stats", "tot", "--X-list", "100"});
    CHECK(g.out == "X,R_tot,R_fund\n100,0.500,\n");

    const std::string csv = path("d.csv");
    CHECK(run({"signs", "--in", built("delta", 100), "--csv", csv}).code == 0);
    CHECK(slurp(csv) == "X,R_tot,R_fund\n10,0.600,0.667\n100,0.520,0.548\n");

    const Result sub = run({"signs", "--in", built("delta", 100), "--t", "1"});
    REQUIRE(sub.code == 0);
    const json j = json::parse(sub.out);
    CHECK(j["t_n2"]["length"] == 10);
    CHECK(j["t_n2"]["values"][1] == -56);

    const Result pw = run({"signs", "--in", built("delta", 10000), "--powers-p", "3"});
    REQUIRE(pw.code == 0);
    CHECK(json::parse(pw.out)["powers"]["values"][2] == -174879);

    const Result dp = run({"signs", "--in", built("delta", 100), "--X-list", "20", "--dprime", "3:-1"});
    REQUIRE(dp.code == 0);
    CHECK(json::parse(dp.out)["survey"]["primes"][0] == 3);

    CHECK(run({"signs", "--in", built("delta", 100), "--X-list", "101"}).code == cli::kExitUsage);
    CHECK(run({"signs", "--in", built("delta", 100), "--stats", "median"}).code == cli::kExitUsage);
}

TEST_CASE("CSV is identical across thread counts")
{
    const std::string a = path("t1.csv"), b = path("t4.csv");
    CHECK(run({"--threads", "1", "signs", "--in", built("g", 10000), "--csv", a}).code == 0);
    CHECK(run({"--threads", "4", "signs", "--in", built("g", 10000), "--csv", b}).code == 0);
    CHECK(slurp(a) == slurp(b));

    const std::string f1 = path("g1.coef"), f4 = path("g4.coef");
    CHECK(run({"--threads", "1", "build", "--form", "g", "--prec", "5000", "--out", f1}).code == 0);
    CHECK(run({"--threads", "4", "build", "--form", "g", "--prec", "5000", "--out", f4}).code == 0);
    CHECK(slurp(f1) == slurp(f4));
}

TEST_CASE("verify suites")
{
    const Result ps = run({"verify", "--in", built("delta", 1000), "--suite", "plus-space"});
    CHECK(ps.code == 0);
    CHECK(json::parse(ps.out)["pass"] == true);

    const Result tau = run({"verify", "--in", path("tau.coef"), "--suite", "plus-space"});
    CHECK(tau.code == cli::kExitUsage);

    const std::string nonplus = path("nonplus.coef");
    REQUIRE(run({"build", "--form", "eta(1)^2*eta(11)^2*theta(1)", "--prec", "50", "--level", "44", "--out", nonplus})
                .code == 0);
    const Result np = run({"verify", "--in", nonplus, "--suite", "plus-space"});
    CHECK(np.code == cli::kExitVerificationFailed);
    CHECK_FALSE(json::parse(np.out)["checks"][0]["witnesses"].empty());

    const Result rec = run({"verify", "--in", built("delta", 10000), "--suite", "recurrence", "--t", "1", "--p", "3"});
    REQUIRE(rec.code == 0);
    const json r = json::parse(rec.out);
    CHECK(r["schema"] == "hwf-verify/1");
    CHECK(r["checks"][0]["max_m"] == 4);
    CHECK(r["checks"][0]["witnesses"][2]["value"] == -174879);

    const Result bounds = run({"verify", "--in", built("delta", 2000), "--suite", "bounds"});
    CHECK(bounds.code == 0);
    CHECK(json::parse(bounds.out)["checks"].size() == 5);

    const Result mix = run({"verify", "--in", path("mix.coef"), "--suite", "bounds"});
    CHECK(mix.code == cli::kExitVerificationFailed);

    const Result p2 = run({"verify", "--in", built("delta", 100), "--suite", "prop2", "--p", "3"});
    REQUIRE(p2.code == 0);
    const json w = json::parse(p2.out);
    for (const auto& c : w["checks"]) {
        if (c["eps"] != -1) continue;
        CHECK(c["witnesses"][0]["index"] == 8);
        CHECK(c["witnesses"][0]["value"] == -240);
        CHECK(c["witnesses"][1]["index"] == 5);
        CHECK(c["witnesses"][1]["value"] == 120);
    }

    const Result p2fail = run({"verify", "--in", built("delta", 3), "--suite", "prop2", "--p", "3"});
    CHECK(p2fail.code == cli::kExitVerificationFailed);

    CHECK(run({"verify", "--in", built("delta", 100), "--suite", "nope"}).code == cli::kExitUsage);
}

TEST_CASE("executable")
{
    const std::string out = path("exe.coef");
    const std::string cmd = std::string("\"") + HWF_CLI_PATH + "\" build --form delta --prec 20 --out \"" + out + "\" > /dev/null";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(body_lines(out)[1] == "4\t-56");
    const std::string bad = std::string("\"") + HWF_CLI_PATH + "\" hecke --in \"" + out + "\" --op tsq --p 2 2> /dev/null";
    const int status = std::system(bad.c_str());
    CHECK(WEXITSTATUS(status) == cli::kExitUsage);
}

TEST_CASE("cleanup")
{
    fs::remove_all(workdir());
}
