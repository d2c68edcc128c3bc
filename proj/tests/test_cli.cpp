#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks against the installed binary. The test runner passes its
// location in BISPEC_CLI; without it the suite has nothing to do.

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

const char* cli() { return std::getenv("BISPEC_CLI"); }

RunResult run(const std::string& args) {
    std::string cmd = std::string(cli()) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string write_config(const char* name, const std::string& body) {
    std::string path = std::string("cli_") + name + ".json";
    std::ofstream(path, std::ios::trunc) << body;
    return path;
}

const char* INDEPENDENT = R"({
  "phi": {"type": "rotation", "angle": {"radians": 3.8832220774509327,
          "relation": {"kind": "independent"}}},
  "psi": {"type": "rotation", "angle": {"radians": 2.6021904539997256}},
  "weight": "2 + z1*z2"
})";

}  // namespace

TEST_CASE("classify prints the tag and the hypothesis flags") {
    if (!cli()) return;
    std::string cfg = write_config("classify", INDEPENDENT);
    RunResult r = run("classify " + cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("case: EE-irr-irr-independent") != std::string::npos);
    CHECK(r.out.find("invertibility: invertible-a2") != std::string::npos);
    CHECK(r.out.find("relation: independent") != std::string::npos);
    std::remove(cfg.c_str());
}

TEST_CASE("spectrum output is byte-identical across runs") {
    if (!cli()) return;
    std::string cfg = write_config("det", INDEPENDENT);
    RunResult a = run("spectrum " + cfg);
    RunResult b = run("spectrum " + cfg);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"sigma\"") != std::string::npos);

    // a different seed still succeeds (probe phases move, bounds stay sound)
    std::string cmd = "SPECTRA_SEED=7 " + std::string(cli()) + " spectrum " + cfg +
                      " > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    std::remove(cfg.c_str());
}

TEST_CASE("svg files are written atomically next to the json") {
    if (!cli()) return;
    std::string cfg = write_config("svg", INDEPENDENT);
    RunResult r = run("spectrum " + cfg + " --svg cli_out.svg");
    CHECK(r.exit_code == 0);
    std::ifstream svg("cli_out.svg");
    REQUIRE(svg.good());
    std::stringstream ss;
    ss << svg.rdbuf();
    CHECK(ss.str().find("<svg") != std::string::npos);
    std::remove("cli_out.svg");
    std::remove(cfg.c_str());
}

TEST_CASE("verify agrees on a correct closed form") {
    if (!cli()) return;
    std::string cfg = write_config("verify", INDEPENDENT);
    RunResult r = run("verify " + cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("all checks agree") != std::string::npos);
    std::remove(cfg.c_str());
}

TEST_CASE("verify exits 5 when the oracle catches the slice formula") {
    if (!cli()) return;
    // interior slice zero: the closed form reports radius 1/2, the ergodic
    // oracle measures the boundary average 1
    std::string cfg = write_config("jensen", R"({
  "phi": {"type": "rotation", "angle": {"radians": 3.8832220774509327}},
  "psi": {"type": "rotation", "angle": {"rational": [0, 1]}},
  "weight": "z1 - 0.5"
})");
    RunResult r = run("verify " + cfg);
    CHECK(r.exit_code == 5);
    CHECK(r.out.find("DISAGREEMENT") != std::string::npos);
    std::remove(cfg.c_str());
}

TEST_CASE("config errors exit 2 with a pointer to the problem") {
    if (!cli()) return;
    std::string cfg = write_config("broken", R"({"phi": 3})");
    RunResult r = run("spectrum " + cfg);
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("config") != std::string::npos);

    std::string unknown = write_config("unknown", R"({
  "phi": {"type": "rotation", "angle": {"radians": 1.0}},
  "psi": {"type": "rotation", "angle": {"radians": 2.0}},
  "weight": "1 + z1",
  "extra": true
})");
    CHECK(run("spectrum " + unknown).exit_code == 2);
    CHECK(run("spectrum no_such_file.json").exit_code == 2);
    std::remove(cfg.c_str());
    std::remove(unknown.c_str());
}

TEST_CASE("unsupported cases exit 3 citing the failed hypothesis") {
    if (!cli()) return;
    std::string cfg = write_config("monomial", R"({
  "phi": {"type": "rotation", "angle": {"radians": 3.8832220774509327}},
  "psi": {"type": "hyperbolic", "strength": 0.5},
  "weight": "z1 + z2"
})");
    RunResult r = run("classify " + cfg);
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("monomial hypothesis") != std::string::npos);
    std::remove(cfg.c_str());
}
