// Copyright 2026 The entcert authors
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

// Spawns the installed CLI (path from ENTCERT_CLI) and checks exit codes
// and output shape per command.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "entcert/io.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* cli = std::getenv("ENTCERT_CLI");
  REQUIRE(cli != nullptr);
  std::string cmd = std::string(cli) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string write_temp(const std::string& name, const json& j) {
  std::string path = "/tmp/" + name;
  std::ofstream out(path);
  out << j.dump(2);
  return path;
}

}  // namespace

TEST_CASE("analyze with builtin channel and state") {
  RunResult r = run_cli("analyze --example dephasing:0.25 --state builtin:bell --restarts 4");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["command"] == "analyze");
  CHECK(j["results"]["coherent_information"].get<double>() ==
        doctest::Approx(1.0 - 0.8112781244591328).epsilon(1e-9));
}

TEST_CASE("certify exit codes") {
  CHECK(run_cli("certify --example bitflip:0.0 --state builtin:bell --skip-eof").exit_code ==
        0);
  CHECK(run_cli("certify --example depolarizing:1.0 --state builtin:bell --skip-eof")
            .exit_code == 1);
  // dimension mismatch -> 3
  CHECK(run_cli("certify --example bitflip:0.1 --state builtin:repetition3 --skip-eof")
            .exit_code == 3);
  // unknown family -> 2
  CHECK(run_cli("certify --example nosuch:0.1 --state builtin:bell").exit_code == 2);
  // malformed example string -> 2
  CHECK(run_cli("certify --example dephasing --state builtin:bell").exit_code == 2);
}

TEST_CASE("parse failures exit 2, invariant failures exit 3") {
  json missing = json::parse(R"json({
    "format_version": 1, "out_dim": 2,
    "kraus": [[[[1,0],[0,0]],[[0,0],[1,0]]]]
  })json");
  std::string bad_path = write_temp("entcert_cli_missing_indim.json", missing);
  CHECK(run_cli("analyze --channel " + bad_path + " --state builtin:bell").exit_code == 2);

  json doubled = json::parse(R"json({
    "format_version": 1, "in_dim": 2, "out_dim": 2,
    "kraus": [[[[1,0],[0,0]],[[0,0],[1,0]]], [[[1,0],[0,0]],[[0,0],[1,0]]]]
  })json");
  std::string invalid_path = write_temp("entcert_cli_doubled.json", doubled);
  CHECK(run_cli("analyze --channel " + invalid_path + " --state builtin:bell").exit_code ==
        3);

  CHECK(run_cli("analyze --state builtin:bell").exit_code == 2);  // no channel at all
}

TEST_CASE("recover writes the recovery channel") {
  std::string out_path = "/tmp/entcert_cli_recovery.json";
  std::remove(out_path.c_str());
  RunResult r = run_cli("recover --example bitflip:0.0 --state builtin:bell --out " +
                        out_path + " --skip-eof");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["results"]["recovery"]["fidelity"].get<double>() >= 1.0 - 1e-9);

  // written file parses as a valid channel spec
  std::ifstream in(out_path);
  REQUIRE(in.good());
  json spec = json::parse(in);
  CHECK_NOTHROW(entcert::channel_from_json(spec));

  CHECK(run_cli("recover --example depolarizing:1.0 --state builtin:bell --out /tmp/x.json"
                " --skip-eof")
            .exit_code == 1);
}

TEST_CASE("sweep tsv emits one row per parameter plus a header") {
  RunResult r = run_cli(
      "sweep --family dephasing --values 0,0.5,1 --format tsv --restarts 2 --skip-eof");
  CHECK(r.exit_code == 0);
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 4);  // header + 3 rows
  CHECK(r.out.rfind("p\t", 0) == 0);

  CHECK(run_cli("sweep --family nosuch --values 0.1").exit_code == 2);
}

TEST_CASE("sweep json rows carry the analytic dephasing curve") {
  RunResult r = run_cli("sweep --family dephasing --from 0 --to 1 --step 0.1 --restarts 2"
                        " --skip-eof");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  const auto& rows = j["results"]["rows"];
  REQUIRE(rows.size() == 11);
  for (const auto& row : rows) {
    double p = row["p"].get<double>();
    double h = 0.0;
    if (p > 1e-15 && p < 1.0 - 1e-15) h = -p * std::log2(p) - (1 - p) * std::log2(1 - p);
    CHECK(row["coherent_information"].get<double>() == doctest::Approx(1.0 - h).epsilon(1e-9));
  }
}

TEST_CASE("tomo command") {
  RunResult r = run_cli("tomo --state builtin:bell");
  CHECK(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["results"]["correlation"].get<double>() == doctest::Approx(0.25).epsilon(1e-9));

  // three-subsystem state file -> exit 3
  json tri;
  tri["format_version"] = 1;
  tri["kind"] = "pure";
  tri["dims"] = {2, 2, 2};
  tri["labels"] = {"A", "B", "C"};
  json amps = json::array();
  for (int i = 0; i < 8; ++i) amps.push_back({i == 0 ? 1.0 : 0.0, 0.0});
  tri["amplitudes"] = amps;
  std::string path = write_temp("entcert_cli_tri.json", tri);
  CHECK(run_cli("tomo --state " + path).exit_code == 3);
}

TEST_CASE("reports are byte-stable across runs for a fixed seed") {
  const std::string cmd =
      "analyze --example amplitude-damping:0.3 --state builtin:bell --seed 7 --restarts 4";
  RunResult a = run_cli(cmd);
  RunResult b = run_cli(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}
