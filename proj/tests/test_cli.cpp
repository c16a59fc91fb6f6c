#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct WorkDir {
    fs::path path = fs::temp_directory_path() / ("ohres_cli_" + std::to_string(::getpid()));
    WorkDir() { fs::create_directories(path); }
    ~WorkDir()
    {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

const fs::path& workdir()
{
    static const WorkDir dir;
    return dir.path;
}

std::string scenario(const char* name)
{
    return std::string(OHRES_SOURCE_DIR) + "/scenarios/" + name;
}

// Runs the tool with stdout/stderr captured into files under the work dir.
int run(const std::string& args)
{
    const std::string cmd = std::string("\"") + OHRES_CLI + "\" " + args + " >\"" +
                            (workdir() / "stdout.txt").string() + "\" 2>\"" + (workdir() / "stderr.txt").string() +
                            "\"";
    const int raw = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(raw));
    return WEXITSTATUS(raw);
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string out() { return slurp(workdir() / "stdout.txt"); }
std::string err() { return slurp(workdir() / "stderr.txt"); }

}  // namespace

TEST_CASE("usage errors")
{
    CHECK(run("") == 1);
    CHECK(run("solve") == 1);
    CHECK(run("solve --scenario /nonexistent.json") == 1);
    CHECK(run("solve --scenario " + scenario("toy_t2.json") + " --format xml") == 1);
    CHECK(run("--help") == 0);
}

TEST_CASE("solve writes a solution and check accepts it")
{
    const auto sol = (workdir() / "toy.json").string();
    REQUIRE(run("solve --scenario " + scenario("toy_t2.json") + " --out " + sol) == 0);
    const auto doc = slurp(sol);
    CHECK(doc.find("\"objective\": 20") != std::string::npos);
    CHECK(run("check --scenario " + scenario("toy_t2.json") + " --solution " + sol) == 0);
    CHECK(out().find("validation: PASS") != std::string::npos);

    auto tampered = doc;
    const auto pos = tampered.find("\"owt\": 2");
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, 8, "\"owt\": 1");
    const auto bad = (workdir() / "tampered.json").string();
    std::ofstream(bad) << tampered;
    CHECK(run("check --scenario " + scenario("toy_t2.json") + " --solution " + bad) == 3);
    CHECK(out().find("validation: FAIL") != std::string::npos);
}

TEST_CASE("repeated solves are byte-identical")
{
    const auto a = (workdir() / "a.json").string();
    const auto b = (workdir() / "b.json").string();
    REQUIRE(run("solve --scenario " + scenario("oracle_t4.json") + " --out " + a) == 0);
    REQUIRE(run("solve --scenario " + scenario("oracle_t4.json") + " --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
}

TEST_CASE("reports in each format")
{
    const auto report = (workdir() / "report.csv").string();
    REQUIRE(run("solve --scenario " + scenario("oracle_t4.json") + " --report " + report + " --format csv") == 0);
    CHECK(slurp(report).rfind("hour,load_kw", 0) == 0);
    REQUIRE(run("solve --scenario " + scenario("oracle_t4.json") + " --format json") == 0);
    CHECK(out().find("\"breakdown\"") != std::string::npos);
}

TEST_CASE("infeasible scenario exits 2")
{
    CHECK(run("solve --scenario " + scenario("fpv_night_infeasible.json")) == 2);
    CHECK(err().find("load exceeds max possible supply") != std::string::npos);
}

TEST_CASE("limits exit 4")
{
    CHECK(run("oracle --scenario " + scenario("default_costs.json")) == 4);
    CHECK(run("solve --scenario " + scenario("default_costs.json") + " --node-limit 1") == 4);
}

TEST_CASE("oracle and profiles")
{
    CHECK(run("oracle --scenario " + scenario("oracle_t4.json")) == 0);
    CHECK(out().find("agreement: yes") != std::string::npos);
    const auto prof = (workdir() / "profiles.json").string();
    CHECK(run("profiles --scenario " + scenario("datasets_kodiak.json") + " --out " + prof) == 0);
    CHECK(slurp(prof).find("\"owt\"") != std::string::npos);
}
