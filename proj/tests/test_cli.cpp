#include <doctest.h>

#include <cstdio>
#include <unistd.h>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stabcalc/dispatch.hpp"

using nlohmann::json;
using namespace stabcalc;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    char out_path[] = "/tmp/stabcalc_cli_XXXXXX";
    int fd = mkstemp(out_path);
    REQUIRE(fd >= 0);
    close(fd);
    std::string cmd =
        std::string(STABCALC_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::remove(out_path);
    return {WEXITSTATUS(rc), ss.str()};
}

} // namespace

TEST_CASE("dispatch table covers every operation") {
    std::set<std::string> reachable;
    for (const auto& entry : dispatch_table())
        reachable.insert(entry.operations.begin(), entry.operations.end());
    for (const auto& op : operation_inventory()) {
        CAPTURE(op);
        CHECK(reachable.count(op) == 1);
    }
    // the published subcommand set, nothing missing
    std::set<std::string> subs;
    for (const auto& entry : dispatch_table()) subs.insert(entry.subcommand);
    CHECK(subs == std::set<std::string>{"pullback", "delta", "decorations", "inertia",
                                        "gerbe-fiber", "xi", "molien", "verify-all"});
}

TEST_CASE("output is byte-stable across runs") {
    std::string args = "pullback --m 1 --n 2 --G L1 --oracle --coeffs --stable-output";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());

    RunResult c = run_cli("inertia --d 5 --stable-output");
    RunResult d = run_cli("inertia --d 5 --stable-output");
    CHECK(c.out == d.out);
}

TEST_CASE("pullback command") {
    RunResult r = run_cli("pullback --m 1 --n 2 --G L1 --oracle --stable-output");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["command"] == "pullback");
    CHECK(rep["outputs"]["closed"] ==
          "1*L1 + 1*O_{D1_(2)(3)} + -1*O_{D1_(2)} + -1*O_{D1_(2,3)} + -1*O_{D1_(3)}");
    CHECK(rep["checks"][0]["pass"] == true);
    CHECK(rep["elapsed_ms"] == 0);
}

TEST_CASE("inertia command lists the seven components for d = 5") {
    RunResult r = run_cli("inertia --d 5 --stable-output");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["outputs"]["count"] == 7);
    CHECK(rep["outputs"]["components"].size() == 7);
    CHECK(rep["outputs"]["components"][0]["cycle_type"]["text"] == "5");
}

TEST_CASE("gerbe-fiber command") {
    RunResult r = run_cli("gerbe-fiber --r 4 --sigma \"(1 2)(3 4)\" --d 5 --stable-output");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["outputs"]["representable"] == false);
    CHECK(rep["outputs"]["coarse_fiber_count"] == 3);
    CHECK(rep["outputs"]["stack_fiber"] == "B mu_2 + B mu_2 + B mu_4");
}

TEST_CASE("xi command") {
    RunResult r = run_cli("xi --g 1 --d 2 --J 0 --gamma 2 --stable-output");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["inputs"]["k"] == 3);
    CHECK(rep["outputs"]["degree_e"] == "6");
    for (const auto& c : rep["checks"]) CHECK(c["pass"] == true);
}

TEST_CASE("molien command") {
    RunResult r = run_cli(
        "molien --group s3-standard --max-degree 20 --compare \"1/((1-q^2)(1-q^3))\" "
        "--stable-output");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["checks"][0]["pass"] == true);
    CHECK(rep["outputs"]["coeffs"][2] == "1");
}

TEST_CASE("delta command") {
    RunResult r = run_cli("delta --vars x1,x2 --expr x1*x2 --stable-output");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["outputs"]["delta"] == "1");

    RunResult law = run_cli(
        "delta --vars x1,x2 --expr \"x1^2*x2\" --factors \"x1:x1^2;x2:x2\" --stable-output");
    CHECK(law.exit_code == 0);
}

TEST_CASE("decorations command") {
    RunResult r = run_cli("decorations --m 1 --n 2 --forget 2 --product \"(2);(2,3)\" "
                          "--stable-output");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep["outputs"]["count"] == 6);
    CHECK(rep["outputs"]["product"] == "1*O_{D1_(2)(3)}");
}

TEST_CASE("exp and ramified paths") {
    RunResult e = run_cli("pullback --m 1 --n 1 --exp --weights 1 --trunc 2 --stable-output");
    REQUIRE(e.exit_code == 0);
    json rep = json::parse(e.out);
    CHECK(rep["checks"][0]["name"] == "per_stratum_delta_factorization");
    CHECK(rep["checks"][0]["pass"] == true);

    RunResult r = run_cli("pullback --m 1 --n 2 --ramified --G M1 --leg-mults 1 "
                          "--edge-mult 1 --stable-output");
    REQUIRE(r.exit_code == 0);
    json rrep = json::parse(r.out);
    CHECK(rrep["checks"][0]["name"] == "unit_multiplicities_match_closed");
    CHECK(rrep["checks"][0]["pass"] == true);

    RunResult s = run_cli("pullback --m 2 --n 0 --ramified --G M1*M2 --leg-mults 2,3 "
                          "--fiber-map 1=1,2=1 --stable-output");
    REQUIRE(s.exit_code == 0);
    CHECK(json::parse(s.out)["outputs"]["symmetrized"] == "1*L1^5");
}

TEST_CASE("exit codes") {
    CHECK(run_cli("no-such-subcommand").exit_code == 2);
    CHECK(run_cli("pullback --n 1 --bogus-flag").exit_code == 2);
    // a failing check exits 1: compare against the wrong series
    RunResult bad = run_cli(
        "molien --group s3-standard --max-degree 5 --compare \"1/(1-q)^2\" --stable-output");
    CHECK(bad.exit_code == 1);
    json rep = json::parse(bad.out);
    CHECK(rep["checks"][0]["pass"] == false);
}
