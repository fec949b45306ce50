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

// Command-line front end: generate instances, run the FBF baseline and the
// hybrid steepest descent method, and run the verification suite.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hnep/aggregative.hpp"
#include "hnep/cli.hpp"
#include "hnep/error.hpp"

namespace {

void add_source_flags(CLI::App* cmd, hnep::cli::InstanceSource& src) {
  auto* path = cmd->add_option("--instance", src.path, "Instance document (JSON)");
  cmd->add_option("--seed", src.seed,
                  "Generator seed; also seeds the initial point");
  cmd->add_option("--players", src.players, "Number of players m")
      ->excludes(path);
  cmd->add_option("--dim", src.dim, "Strategy dimension M")->excludes(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational equilibria and hierarchical Nash selection"};
  app.require_subcommand(1);

  hnep::cli::RunManifest manifest;
  std::string algo = "compare";
  auto* solve = app.add_subcommand("solve", "Run fbf, hsdm or both");
  add_source_flags(solve, manifest.source);
  solve->add_option("--algo", algo, "fbf | hsdm | compare")
      ->check(CLI::IsMember({"fbf", "hsdm", "compare"}));
  solve->add_option("--gamma", manifest.gamma, "Step parameter gamma");
  solve->add_option("--alpha", manifest.alpha, "Averaging parameter alpha");
  solve->add_option("--radius", manifest.radius, "Ball radius r (inf allowed)");
  solve->add_option("--lambda-scale", manifest.lambda_scale,
                    "c in lambda_n = c / (n + k)");
  solve->add_option("--lambda-offset", manifest.lambda_offset,
                    "k in lambda_n = c / (n + k)");
  solve->add_option("--max-iters", manifest.max_iters, "Iteration budget");
  solve->add_option("--tol", manifest.tol, "Residual tolerance");
  solve->add_option("--trace-every", manifest.trace_every,
                    "Trace record period");
  solve->add_option("--out", manifest.out_dir, "Output directory");

  hnep::cli::InstanceSource check_src;
  double check_gamma = 0.25;
  std::string check_out = "out";
  auto* check = app.add_subcommand("check", "Run the property suite");
  add_source_flags(check, check_src);
  check->add_option("--gamma", check_gamma, "Gamma to test for admissibility");
  check->add_option("--out", check_out, "Output directory");

  hnep::cli::InstanceSource gen_src;
  std::string gen_path;
  auto* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("--seed", gen_src.seed, "Generator seed");
  generate->add_option("--players", gen_src.players, "Number of players m");
  generate->add_option("--dim", gen_src.dim, "Strategy dimension M");
  generate->add_option("--output", gen_path, "Destination file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hnep::cli::kExitInvalid;
  }

  if (*solve) {
    manifest.algorithm = *hnep::cli::parse_algorithm(algo);
    return hnep::cli::cmd_solve(manifest, std::cerr);
  }
  if (*check) {
    return hnep::cli::cmd_check(check_src, check_gamma, check_out, std::cerr);
  }
  try {
    hnep::save_instance(hnep::cli::load_source(gen_src), gen_path);
  } catch (const hnep::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return hnep::cli::kExitInvalid;
  }
  return hnep::cli::kExitOk;
}
