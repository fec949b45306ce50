// Copyright 2026 The hnep Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "hnep/aggregative.hpp"
#include "hnep/cli.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace hnep;
using namespace hnep::cli;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("hnep_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunManifest small_manifest(const fs::path& out) {
  RunManifest m;
  m.source.seed = 3;
  m.source.players = 3;
  m.source.dim = 2;
  m.max_iters = 400;
  m.trace_every = 50;
  m.out_dir = out.string();
  return m;
}

}  // namespace

TEST_CASE("parse_algorithm") {
  CHECK(parse_algorithm("fbf") == Algorithm::kFbf);
  CHECK(parse_algorithm("hsdm") == Algorithm::kHsdm);
  CHECK(parse_algorithm("compare") == Algorithm::kCompare);
  CHECK_FALSE(parse_algorithm("newton").has_value());
  CHECK(algorithm_name(Algorithm::kHsdm) == "hsdm");
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e15, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("initial_point is seeded and lies in the unit box") {
  const GameSpec spec = build_game_spec(random_instance(1, 6, 3));
  const LiftedPoint a = initial_point(spec, 7);
  CHECK(a == initial_point(spec, 7));
  CHECK_FALSE(a == initial_point(spec, 8));
  for (double v : a.x.flat()) CHECK((v >= 0.0 && v < 1.0));
  for (double v : a.u) CHECK((v >= 0.0 && v < 1.0));
}

TEST_CASE("solve --algo compare writes traces and a summary") {
  const fs::path out = scratch("compare");
  std::ostringstream log;
  const int code = cmd_solve(small_manifest(out), log);
  CHECK((code == kExitOk || code == kExitBudget));
  REQUIRE(fs::exists(out / "trace_fbf.csv"));
  REQUIRE(fs::exists(out / "trace_hsdm.csv"));
  REQUIRE(fs::exists(out / "summary.json"));

  std::istringstream csv(slurp(out / "trace_hsdm.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "n,residual,lambda,fu_1,fu_2,fu_3");
  std::string first;
  std::getline(csv, first);
  CHECK(first.rfind("0,", 0) == 0);

  const json s = json::parse(slurp(out / "summary.json"));
  CHECK(s["parameters"]["gamma"] == 0.25);
  CHECK(s["parameters"]["alpha"] == 0.75);
  CHECK(s["parameters"]["max_iters"] == 400);
  CHECK(s["instance"]["m"] == 3);
  CHECK(s["runs"].contains("fbf"));
  CHECK(s["runs"].contains("hsdm"));
  CHECK(s["comparison"]["hsdm_not_worse"].size() == 3);
  CHECK(s["runs"]["fbf"]["upper_costs"].size() == 3);
}

TEST_CASE("solve with a zero budget exits with the budget status") {
  const fs::path out = scratch("budget");
  RunManifest m = small_manifest(out);
  m.max_iters = 0;
  m.algorithm = Algorithm::kFbf;
  std::ostringstream log;
  CHECK(cmd_solve(m, log) == kExitBudget);
  std::istringstream csv(slurp(out / "trace_fbf.csv"));
  std::string line;
  int rows = 0;
  std::getline(csv, line);
  while (std::getline(csv, line)) {
    ++rows;
    CHECK(line.rfind("0,", 0) == 0);
  }
  CHECK(rows == 1);
  CHECK_FALSE(fs::exists(out / "trace_hsdm.csv"));
}

TEST_CASE("solve rejects invalid parameters") {
  const fs::path out = scratch("invalid");
  RunManifest m = small_manifest(out);
  std::ostringstream log;
  m.gamma = 10.0;
  CHECK(cmd_solve(m, log) == kExitInvalid);
  m.gamma = 0.25;
  m.source.path = (out / "missing.json").string();
  CHECK(cmd_solve(m, log) == kExitInvalid);
}

TEST_CASE("solve output is bitwise reproducible") {
  const fs::path a = scratch("repeat_a");
  const fs::path b = scratch("repeat_b");
  std::ostringstream log;
  RunManifest ma = small_manifest(a);
  RunManifest mb = small_manifest(b);
  ma.source.path = mb.source.path =
      hnep::testing::instance_path("shared_m3_M1.json");
  cmd_solve(ma, log);
  cmd_solve(mb, log);
  for (const char* f : {"trace_fbf.csv", "trace_hsdm.csv"}) {
    CHECK(slurp(a / f) == slurp(b / f));
  }
  // The summary echoes the output directory nowhere, so it matches too.
  CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
}

TEST_CASE("check subcommand") {
  std::ostringstream log;
  SUBCASE("shipped instance passes") {
    const fs::path out = scratch("check_ok");
    InstanceSource src;
    src.path = hnep::testing::instance_path("shared_m3_M1.json");
    CHECK(cmd_check(src, 0.25, out.string(), log) == kExitOk);
    const json r = json::parse(slurp(out / "check_report.json"));
    CHECK(r["passed"] == true);
  }
  SUBCASE("a > b is an invalid instance") {
    const fs::path out = scratch("check_bad");
    AggregativeGame g = hnep::testing::load_shipped("shared_m3_M1.json");
    json doc = json::parse(serialize_instance(g));
    doc["a"] = 1.0;
    std::ofstream(out / "bad.json") << doc.dump();
    InstanceSource src;
    src.path = (out / "bad.json").string();
    CHECK(cmd_check(src, 0.25, out.string(), log) == kExitInvalid);
  }
  SUBCASE("an understated Lipschitz constant fails the suite") {
    const fs::path out = scratch("check_tampered");
    AggregativeGame g = random_instance(4, 6, 3);
    g.stated_kappa_G = 0.5 * compute_kappa_G(g);
    save_instance(g, (out / "tampered.json").string());
    InstanceSource src;
    src.path = (out / "tampered.json").string();
    CHECK(cmd_check(src, 0.25, out.string(), log) == kExitCheckFailed);
    CHECK(log.str().find("check failed: lipschitz") != std::string::npos);
  }
}

TEST_CASE("the executable parses its flags") {
  const fs::path out = scratch("exe");
  const std::string exe = HNEP_CLI_PATH;
  const std::string inst = (out / "inst.json").string();
  CHECK(std::system((exe + " generate --seed 2 --players 2 --dim 1 --output " +
                     inst + " 2>/dev/null").c_str()) == 0);
  const AggregativeGame g = load_instance(inst);
  CHECK(g.m == 2);
  CHECK(g.seed == 2u);
  CHECK(std::system((exe + " solve --instance " + inst +
                     " --algo fbf --max-iters 50 --out " + out.string() +
                     " 2>/dev/null").c_str()) != -1);
  CHECK(fs::exists(out / "trace_fbf.csv"));
  CHECK(std::system((exe + " solve --algo newton 2>/dev/null").c_str()) != 0);
  CHECK(std::system((exe + " 2>/dev/null >/dev/null").c_str()) != 0);
}
