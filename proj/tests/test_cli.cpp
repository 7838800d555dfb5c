// Exercises the installed command surface through real subprocess calls:
// exit codes, output stability, and the file formats.

#include <cstdlib>
#include <string>

#include <doctest.h>

#include "test_util.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args, const std::string& tag) {
    const std::string out_path = (spptest::temp_dir() / ("cli_" + tag + ".out")).string();
    const std::string cmd = std::string(SPP_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = spptest::read_file(out_path);
    return r;
}

std::string fixture_two_straight() {
    static const std::string path = [] {
        spp::save_workspace(spptest::two_straight(),
                            (spptest::temp_dir() / "fixture_two.json").string());
        return (spptest::temp_dir() / "fixture_two.json").string();
    }();
    return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes reproducible workspace files") {
    const std::string a = (spptest::temp_dir() / "gen_a.json").string();
    const std::string b = (spptest::temp_dir() / "gen_b.json").string();
    CHECK(run_cli("gen --n 12 --extent 100 --curvature-max 1.5 --seed 11 --out " + a, "gen_a")
              .exit_code == 0);
    CHECK(run_cli("gen --n 12 --extent 100 --curvature-max 1.5 --seed 11 --out " + b, "gen_b")
              .exit_code == 0);
    CHECK(spptest::read_file(a) == spptest::read_file(b));
    const spp::Workspace ws = spp::load_workspace(a);
    CHECK(ws.size() == 12);
}

TEST_CASE("solve --method exact reports the known optimum") {
    const CliResult r = run_cli("solve --input " + fixture_two_straight() + " --method exact",
                                "solve_exact");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"length\":6") != std::string::npos);
    CHECK(r.out.find("\"order\"") != std::string::npos);
}

TEST_CASE("solve --method cspp is byte-stable and carries stage weights") {
    const std::string args = "solve --input " + fixture_two_straight() + " --method cspp";
    const CliResult a = run_cli(args, "cspp_a");
    const CliResult b = run_cli(args, "cspp_b");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"stage_weights\"") != std::string::npos);
    CHECK(a.out.find("\"mst\"") != std::string::npos);
    CHECK(a.out.back() == '\n');
}

TEST_CASE("solve --method ga writes stats when asked") {
    const std::string stats = (spptest::temp_dir() / "ga_stats.csv").string();
    const CliResult r = run_cli("solve --input " + fixture_two_straight() +
                                    " --method ga --seed 3 --ga-pop 10 --stats-out " + stats,
                                "solve_ga");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"stats_path\"") != std::string::npos);
    const std::string csv = spptest::read_file(stats);
    CHECK(csv.rfind("generation,best,mean\n", 0) == 0);
}

TEST_CASE("exit codes distinguish input errors from size caps") {
    CHECK(run_cli("solve --input /nonexistent.json --method cspp", "missing").exit_code == 1);

    const std::string bad = spptest::write_file(
        "bad_arc.json", R"({"subpaths": [{"start": [0,0], "end": [1,0], "length": 0.25}]})");
    CHECK(run_cli("solve --input " + bad + " --method cspp", "bad_arc").exit_code == 1);

    const std::string big = (spptest::temp_dir() / "big.json").string();
    REQUIRE(run_cli("gen --n 15 --seed 1 --out " + big, "gen_big").exit_code == 0);
    CHECK(run_cli("solve --input " + big + " --method exact", "cap").exit_code == 2);
}

TEST_CASE("verify passes and notes the no-op repair on straight segments") {
    const CliResult r = run_cli("verify --input " + fixture_two_straight(), "verify");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("no-op") != std::string::npos);
    CHECK(r.out.find("pass triangle repair") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);

    const std::string curved = (spptest::temp_dir() / "curved.json").string();
    spp::save_workspace(spptest::curved_pair(), curved);
    const CliResult c = run_cli("verify --input " + curved, "verify_curved");
    CHECK(c.exit_code == 0);
    CHECK(c.out.find("\"updated\":true") != std::string::npos);
    CHECK(c.out.find("no-op") == std::string::npos);
}

TEST_CASE("bench emits one row per environment and method") {
    // 20 subpaths and 10 reps: enough for the deterministic solver's zero
    // length spread to be non-trivial (naive averaging shows ulp dust here)
    const std::string env1 = (spptest::temp_dir() / "bench1.json").string();
    const std::string env2 = (spptest::temp_dir() / "bench2.json").string();
    REQUIRE(run_cli("gen --n 20 --seed 21 --out " + env1, "bench_gen1").exit_code == 0);
    REQUIRE(run_cli("gen --n 20 --seed 22 --out " + env2, "bench_gen2").exit_code == 0);
    const CliResult r = run_cli("bench --envs " + env1 + " " + env2 +
                                    " --methods cspp ga --reps 10 --ga-pop 20",
                                "bench");
    REQUIRE(r.exit_code == 0);

    // header + 4 data rows, then the improvement block
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : r.out) {
        if (ch == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    REQUIRE(lines.size() >= 8);
    CHECK(lines[0] == "env,method,length_mean,length_std,time_mean,time_std");
    int data_rows = 0;
    for (std::size_t i = 1; i < lines.size() && !lines[i].empty(); ++i) ++data_rows;
    CHECK(data_rows == 4);
    // deterministic solver rows report zero length spread
    for (const std::string& line : lines) {
        if (line.find(",cspp,") == std::string::npos) continue;
        const auto first = line.find(",cspp,") + 6;
        const auto second = line.find(',', first);
        CHECK(line.substr(second + 1, line.find(',', second + 1) - second - 1) == "0");
    }
    bool has_improvement_header = false;
    for (const std::string& line : lines)
        has_improvement_header |= line == "env,time_improving,length_improving";
    CHECK(has_improvement_header);
}

}  // TEST_SUITE
