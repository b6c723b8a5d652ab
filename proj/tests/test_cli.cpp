// Copyright 2026 The qnm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// End-to-end contract tests for the scenario runner binary: exit codes,
// report content, determinism, and the compute-then-write guarantee.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string cli() { return QNM_CLI_PATH; }

std::string fixture(const std::string& name) {
  return std::string(QNM_FIXTURE_DIR) + "/" + name;
}

const fs::path& scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::current_path() / "cli_scratch";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string out_file(const std::string& name) {
  const fs::path p = scratch() / name;
  fs::remove(p);
  return p.string();
}

// Run a shell command, discarding its streams; returns the exit code.
int run(const std::string& cmd) {
  const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("the triangle bound scenario reports the analytic optimum") {
  const std::string out = out_file("triangle.json");
  const int code = run(cli() + " --scenario \"" + fixture("triangle_bound.json") +
                       "\" --out \"" + out + "\"");
  CHECK(code == 0);
  const json r = json::parse(slurp(out));
  CHECK(r["qubits"].get<int>() == 6);
  CHECK(r["nu"].get<int>() == 1);
  CHECK(r["bound"].get<double>() == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK(r["matrix_crb"].get<double>() ==
        doctest::Approx(1.0 / 12.0).epsilon(1e-12));
  CHECK_FALSE(r["crb_pseudo_inverse"].get<bool>());
  CHECK(r["qfi_trace"].get<double>() == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(r["holds"].get<bool>());
  CHECK(r["k_values"] == json::array({2, 2, 2}));
}

TEST_CASE("the scenario file may name its own output path") {
  const fs::path report = scratch() / "triangle_report.json";
  fs::remove(report);
  const int code = run("cd \"" + scratch().string() + "\" && " + cli() +
                       " --scenario \"" + fixture("triangle_bound.json") + "\"");
  CHECK(code == 0);
  CHECK(fs::exists(report));
}

TEST_CASE("csv output carries one header and one row for a single scenario") {
  const std::string out = out_file("triangle.csv");
  const int code = run(cli() + " --scenario \"" + fixture("triangle_bound.json") +
                       "\" --format csv --out \"" + out + "\"");
  CHECK(code == 0);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "qubits,nu,bound,matrix_crb,crb_pseudo_inverse,qfi_trace,gap_min_eig,"
        "holds");
  CHECK(lines[1].find("6,1,0.0833333333333,") == 0);
}

TEST_CASE("the exact protocol scenario matches the closed forms") {
  const std::string out = out_file("cycle3.json");
  const int code = run(cli() + " --scenario \"" + fixture("cycle3_protocol.json") +
                       "\" --out \"" + out + "\"");
  CHECK(code == 0);
  const json r = json::parse(slurp(out));
  CHECK(r["cycle"].get<int>() == 3);
  CHECK(r["qubits"].get<int>() == 8);
  CHECK(r["all_success_probability"].get<double>() ==
        doctest::Approx(1.0 / 64.0).epsilon(1e-12));
  CHECK(r["success_bound"].get<double>() ==
        doctest::Approx(1.0 / 64.0).epsilon(1e-12));
  CHECK(r["equality_expected"].get<bool>());
  CHECK(r["phase_sum"].get<double>() == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r["predicted_center_probability"].get<double>() ==
        doctest::Approx(std::cos(0.15) * std::cos(0.15)).epsilon(1e-12));
  CHECK(r["fi"].get<double>() == doctest::Approx(9.0).epsilon(1e-5));
  CHECK(r["steps"].size() == 2);
}

TEST_CASE("reruns are byte-identical") {
  const std::string a = out_file("rerun_a.json");
  const std::string b = out_file("rerun_b.json");
  SUBCASE("exact bound") {
    REQUIRE(run(cli() + " --scenario \"" + fixture("triangle_bound.json") +
                "\" --out \"" + a + "\"") == 0);
    REQUIRE(run(cli() + " --scenario \"" + fixture("triangle_bound.json") +
                "\" --out \"" + b + "\"") == 0);
    CHECK(slurp(a) == slurp(b));
  }
  SUBCASE("exact protocol") {
    REQUIRE(run(cli() + " --scenario \"" + fixture("cycle3_protocol.json") +
                "\" --out \"" + a + "\"") == 0);
    REQUIRE(run(cli() + " --scenario \"" + fixture("cycle3_protocol.json") +
                "\" --out \"" + b + "\"") == 0);
    CHECK(slurp(a) == slurp(b));
  }
  SUBCASE("seeded sampling") {
    REQUIRE(run(cli() + " --scenario \"" + fixture("cycle3_sampled.json") +
                "\" --out \"" + a + "\"") == 0);
    REQUIRE(run(cli() + " --scenario \"" + fixture("cycle3_sampled.json") +
                "\" --out \"" + b + "\"") == 0);
    CHECK(slurp(a) == slurp(b));
  }
}

TEST_CASE("sampled runs account for every shot") {
  const std::string out = out_file("sampled.json");
  const int code = run(cli() + " --scenario \"" + fixture("cycle3_sampled.json") +
                       "\" --out \"" + out + "\"");
  CHECK(code == 0);
  const json r = json::parse(slurp(out));
  CHECK(r["shots"].get<long>() == 2000);
  const long successes = r["all_success_count"].get<long>();
  const long failures = r["first_failure_1"].get<long>() +
                        r["first_failure_2"].get<long>();
  CHECK(successes + failures == 2000);
  CHECK(r["center_ghz_count"].get<long>() <= successes);
  const double freq = r["conditional_frequency"].get<double>();
  CHECK(freq >= 0.0);
  CHECK(freq <= 1.0);
}

TEST_CASE("seedless sampling is rejected unless a seed flag is supplied") {
  const std::string out = out_file("seedless.json");
  SUBCASE("no seed anywhere: validation failure, nothing written") {
    const int code = run(cli() + " --scenario \"" +
                         fixture("cycle3_seedless.json") + "\" --out \"" + out +
                         "\"");
    CHECK(code == 2);
    CHECK_FALSE(fs::exists(out));
  }
  SUBCASE("the --seed flag completes the configuration") {
    const int code = run(cli() + " --scenario \"" +
                         fixture("cycle3_seedless.json") + "\" --seed 9 --out \"" +
                         out + "\"");
    CHECK(code == 0);
    const json r = json::parse(slurp(out));
    CHECK(r["shots"].get<long>() == 200);
  }
}

TEST_CASE("the privacy audit groups probes by their weighted combination") {
  const std::string out = out_file("privacy.json");
  const int code = run(cli() + " --scenario \"" + fixture("cycle3_privacy.json") +
                       "\" --out \"" + out + "\"");
  CHECK(code == 0);
  const json r = json::parse(slurp(out));
  CHECK(r["group_count"].get<int>() == 2);
  CHECK(r["holds"].get<bool>());
  CHECK(r["partial_within_max"].get<double>() <= 1e-9);
  CHECK(r["full_cross_min"].get<double>() > 1e-3);
}

TEST_CASE("the transverse-field comparison renders the frozen csv row") {
  const std::string out = out_file("ising.csv");
  const int code = run(cli() + " --scenario \"" + fixture("ising.json") +
                       "\" --out \"" + out + "\"");
  CHECK(code == 0);
  const auto lines = lines_of(slurp(out));
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] ==
        "M,r,eps,ours,reference_small_eps,reference_large_eps,eps_critical,"
        "large_eps_in_regime");
  CHECK(lines[1].find("10,1,0.1,22.05,10.125,6.05,0.7302") == 0);
  CHECK(lines[1].find(",false") != std::string::npos);
}

TEST_CASE("a payload sweep emits one csv row per grid point") {
  const std::string out = out_file("ising_sweep.csv");
  const int code = run(cli() + " --scenario \"" + fixture("ising.json") +
                       "\" --sweep eps=0:0.4:0.1 --out \"" + out + "\"");
  CHECK(code == 0);
  const auto lines = lines_of(slurp(out));
  CHECK(lines.size() == 6);  // header + five grid points
}

TEST_CASE("protocol sweeps append the information scaling slope") {
  const std::string out = out_file("cycle_sweep.json");
  const int code = run(cli() + " --scenario \"" + fixture("cycle3_protocol.json") +
                       "\" --sweep cycle=2:5:1 --format json --out \"" + out +
                       "\"");
  CHECK(code == 0);
  const json doc = json::parse(slurp(out));
  CHECK(doc["sweep"].get<std::string>() == "cycle");
  REQUIRE(doc["rows"].size() == 4);
  CHECK(doc["fi_loglog_slope"].get<double>() ==
        doctest::Approx(2.0).epsilon(0.05));
  CHECK(doc["rows"][2]["cycle"].get<int>() == 4);
  CHECK(doc["rows"][2]["fi"].get<double>() ==
        doctest::Approx(16.0).epsilon(1e-4));
}

TEST_CASE("light-cone scenarios check a random circuit against the bound") {
  const std::string out = out_file("lightcone.json");
  const int code = run(cli() + " --scenario \"" + fixture("lightcone_chain.json") +
                       "\" --out \"" + out + "\"");
  CHECK(code == 0);
  const json r = json::parse(slurp(out));
  CHECK(r["q_bound"].get<int>() == 5);  // nearest-neighbour chain, depth two
  CHECK(r["exact_max_support"].get<int>() <= 5);
  CHECK(r["within_bound"].get<bool>());
}

TEST_CASE("the certificate decomposition holds on the triangle") {
  const std::string out = out_file("decompose.json");
  const int code = run(cli() + " --scenario \"" + fixture("decompose_cert.json") +
                       "\" --out \"" + out + "\"");
  CHECK(code == 0);
  const json r = json::parse(slurp(out));
  CHECK(r["edges"].get<int>() == 3);
  CHECK(r["holds"].get<bool>());
  CHECK(r["parts"].size() == 3);
}

TEST_CASE("validation failures exit with code two and write nothing") {
  const std::string out = out_file("never.json");
  SUBCASE("malformed scenario json") {
    CHECK(run(cli() + " --scenario \"" + fixture("malformed.json") +
              "\" --out \"" + out + "\"") == 2);
    CHECK_FALSE(fs::exists(out));
  }
  SUBCASE("unknown scenario kind") {
    CHECK(run(cli() + " --scenario \"" + fixture("unknown_kind.json") +
              "\" --out \"" + out + "\"") == 2);
    CHECK_FALSE(fs::exists(out));
  }
  SUBCASE("missing scenario file") {
    CHECK(run(cli() + " --scenario \"" + (scratch() / "nope.json").string() +
              "\" --out \"" + out + "\"") == 2);
    CHECK_FALSE(fs::exists(out));
  }
  SUBCASE("unknown flag") {
    CHECK(run(cli() + " --scenario \"" + fixture("triangle_bound.json") +
              "\" --frobnicate") == 2);
  }
  SUBCASE("missing required flag") { CHECK(run(cli()) == 2); }
  SUBCASE("bad sweep grammar") {
    CHECK(run(cli() + " --scenario \"" + fixture("ising.json") +
              "\" --sweep eps=0:1 --out \"" + out + "\"") == 2);
    CHECK_FALSE(fs::exists(out));
  }
  SUBCASE("bad format") {
    CHECK(run(cli() + " --scenario \"" + fixture("ising.json") +
              "\" --format yaml --out \"" + out + "\"") == 2);
    CHECK_FALSE(fs::exists(out));
  }
}

TEST_CASE("help exits cleanly") { CHECK(run(cli() + " --help") == 0); }

TEST_CASE("infeasible computations exit with code three") {
  CHECK(run(cli() + " --scenario \"" + fixture("toolarge.json") + "\"") == 3);
}

TEST_CASE("invariant violations exit with code four but keep the evidence") {
  // An absurdly strict gap tolerance makes the (true) certificate fail;
  // the report must still be written for inspection.
  const std::string out = out_file("violated.json");
  const int code = run("QNM_TOL=psd_gap=1e-6 " + cli() + " --scenario \"" +
                       fixture("triangle_bound.json") + "\" --out \"" + out +
                       "\"");
  CHECK(code == 4);
  REQUIRE(fs::exists(out));
  const json r = json::parse(slurp(out));
  CHECK_FALSE(r["holds"].get<bool>());
  // The numbers themselves are unchanged; only the verdict moved.
  CHECK(r["bound"].get<double>() == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}
