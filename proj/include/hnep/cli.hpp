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

#ifndef HNEP_CLI_HPP_
#define HNEP_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hnep/aggregative.hpp"
#include "hnep/game.hpp"
#include "hnep/solver.hpp"

namespace hnep::cli {

// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitBudget = 2;
inline constexpr int kExitCheckFailed = 3;

// Either an instance document or generator parameters. `seed` also seeds the
// initial point when the instance comes from a file.
struct InstanceSource {
  std::optional<std::string> path;
  std::uint64_t seed = 1;
  std::size_t players = 6;
  std::size_t dim = 3;
};

enum class Algorithm { kFbf, kHsdm, kCompare };

std::optional<Algorithm> parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);

struct RunManifest {
  InstanceSource source;
  Algorithm algorithm = Algorithm::kCompare;
  double gamma = 0.25;
  double alpha = 0.75;
  double radius = 1e15;
  double lambda_scale = 1.0;
  double lambda_offset = 3.0;
  std::size_t max_iters = 100000;
  double tol = 1e-8;
  std::size_t trace_every = 100;
  std::string out_dir = "out";

  SolverConfig solver_config() const;
};

AggregativeGame load_source(const InstanceSource& source);

// xi_0 with every primal and dual coordinate uniform on [0, 1], drawn from a
// mt19937_64 seeded with seed ^ 0x9E3779B97F4A7C15 (primal blocks first).
LiftedPoint initial_point(const GameSpec& spec, std::uint64_t seed);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

// Header n,residual,lambda,fu_1,...,fu_m and one row per record.
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace,
                     std::size_t players);

// Writes trace_<algo>.csv files and summary.json into manifest.out_dir.
// Returns kExitOk when every requested run converged, kExitBudget when one
// ran out of iterations and kExitInvalid on bad input.
int cmd_solve(const RunManifest& manifest, std::ostream& log);

// Runs the property suite and writes check_report.json into out_dir.
// Returns kExitOk, kExitInvalid or kExitCheckFailed.
int cmd_check(const InstanceSource& source, double gamma,
              const std::string& out_dir, std::ostream& log);

}  // namespace hnep::cli

#endif  // HNEP_CLI_HPP_
