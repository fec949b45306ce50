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

#include "hnep/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

#include "hnep/error.hpp"
#include "hnep/oracle.hpp"
#include "hnep/random.hpp"
#include "json.hpp"

namespace hnep::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::uint64_t kInitialPointSalt = 0x9E3779B97F4A7C15ULL;

json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json source_json(const InstanceSource& s) {
  json j;
  if (s.path) {
    j["path"] = *s.path;
  } else {
    j["generator"] = {{"seed", s.seed}, {"players", s.players}, {"dim", s.dim}};
  }
  j["initial_point_seed"] = s.seed;
  return j;
}

json run_json(const GameSpec& spec, const SolveResult& r) {
  json j;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["final_residual"] = r.final_residual;
  j["upper_costs"] = upper_costs(spec, r.final.x);
  j["x"] = std::vector<double>(r.final.x.flat().begin(), r.final.x.flat().end());
  j["u"] = r.final.u;
  return j;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "fbf") return Algorithm::kFbf;
  if (name == "hsdm") return Algorithm::kHsdm;
  if (name == "compare") return Algorithm::kCompare;
  return std::nullopt;
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kFbf:
      return "fbf";
    case Algorithm::kHsdm:
      return "hsdm";
    case Algorithm::kCompare:
      return "compare";
  }
  return "unknown";
}

SolverConfig RunManifest::solver_config() const {
  SolverConfig cfg;
  cfg.op.gamma = gamma;
  cfg.op.alpha = alpha;
  cfg.op.radius = radius;
  cfg.schedule = StepsizeSchedule{lambda_scale, lambda_offset};
  cfg.max_iters = max_iters;
  cfg.residual_tol = tol;
  cfg.trace_every = trace_every;
  return cfg;
}

AggregativeGame load_source(const InstanceSource& source) {
  if (source.path) return load_instance(*source.path);
  if (source.players < 1 || source.dim < 1) {
    throw InvalidInstance("--players and --dim must be positive");
  }
  return random_instance(source.seed, source.players, source.dim);
}

LiftedPoint initial_point(const GameSpec& spec, std::uint64_t seed) {
  std::mt19937_64 engine(seed ^ kInitialPointSalt);
  LiftedPoint xi = spec.zero_lifted();
  for (double& v : xi.x.flat()) v = uniform(engine, 0.0, 1.0);
  for (double& v : xi.u) v = uniform(engine, 0.0, 1.0);
  return xi;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace,
                     std::size_t players) {
  out << "n,residual,lambda";
  for (std::size_t i = 1; i <= players; ++i) out << ",fu_" << i;
  out << '\n';
  for (const TraceRecord& r : trace) {
    out << r.n << ',' << format_double(r.residual) << ','
        << format_double(r.lambda);
    for (double f : r.upper_costs) out << ',' << format_double(f);
    out << '\n';
  }
}

int cmd_solve(const RunManifest& manifest, std::ostream& log) {
  AggregativeGame game;
  GameSpec spec;
  SolverConfig cfg;
  try {
    game = load_source(manifest.source);
    spec = build_game_spec(game);
    cfg = manifest.solver_config();
    cfg.validate(spec);
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  const LiftedPoint xi0 = initial_point(spec, manifest.source.seed);
  const fs::path dir(manifest.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    log << "error: cannot create " << dir << ": " << ec.message() << '\n';
    return kExitInvalid;
  }

  json summary;
  summary["parameters"] = {
      {"algorithm", algorithm_name(manifest.algorithm)},
      {"gamma", manifest.gamma},
      {"alpha", manifest.alpha},
      {"radius", number_or_string(manifest.radius)},
      {"lambda_scale", manifest.lambda_scale},
      {"lambda_offset", manifest.lambda_offset},
      {"max_iters", manifest.max_iters},
      {"tol", manifest.tol},
      {"trace_every", manifest.trace_every},
      {"instance", source_json(manifest.source)},
  };
  summary["instance"] = {{"m", game.m},
                         {"M", game.M},
                         {"kappa_G", spec.kappa_G},
                         {"L_norm", spec.L_norm},
                         {"seed", game.seed ? json(*game.seed) : json()}};

  bool all_converged = true;
  std::optional<SolveResult> fbf;
  std::optional<SolveResult> hsdm;
  try {
    auto emit = [&](const std::string& name, const SolveResult& r) {
      std::ofstream csv(dir / ("trace_" + name + ".csv"), std::ios::binary);
      if (!csv) throw Error("cannot write trace for " + name);
      write_trace_csv(csv, r.trace, game.m);
      summary["runs"][name] = run_json(spec, r);
      all_converged = all_converged && r.converged;
      log << name << ": " << (r.converged ? "converged" : "budget exhausted")
          << " after " << r.iterations << " iterations, residual "
          << format_double(r.final_residual) << '\n';
    };
    if (manifest.algorithm != Algorithm::kHsdm) {
      fbf = run_fbf(spec, cfg, xi0);
      emit("fbf", *fbf);
    }
    if (manifest.algorithm != Algorithm::kFbf) {
      hsdm = run_hsdm(spec, cfg, xi0);
      emit("hsdm", *hsdm);
    }
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  if (fbf && hsdm) {
    const Coords cf = upper_costs(spec, fbf->final.x);
    const Coords ch = upper_costs(spec, hsdm->final.x);
    std::vector<bool> not_worse(cf.size());
    for (std::size_t i = 0; i < cf.size(); ++i) not_worse[i] = ch[i] <= cf[i];
    double sf = 0.0;
    double sh = 0.0;
    for (std::size_t i = 0; i < cf.size(); ++i) {
      sf += cf[i];
      sh += ch[i];
    }
    summary["comparison"] = {
        {"hsdm_not_worse", not_worse},
        {"all_players_not_worse",
         std::all_of(not_worse.begin(), not_worse.end(),
                     [](bool b) { return b; })},
        {"sum_upper_cost_fbf", sf},
        {"sum_upper_cost_hsdm", sh},
    };
  }

  try {
    write_file(dir / "summary.json", summary.dump(2) + "\n");
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return all_converged ? kExitOk : kExitBudget;
}

int cmd_check(const InstanceSource& source, double gamma,
              const std::string& out_dir, std::ostream& log) {
  GameSpec spec;
  try {
    spec = build_game_spec(load_source(source));
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  PropertySuiteOptions opts;
  opts.seed = source.seed;
  OperatorConfig op;
  op.gamma = gamma;
  opts.op = op;
  const std::vector<CheckReport> reports = run_property_suite(spec, opts);

  json doc = json::array();
  const CheckReport* worst = nullptr;
  for (const CheckReport& r : reports) {
    doc.push_back({{"name", r.name},
                   {"passed", r.passed},
                   {"worst_violation", r.worst_violation},
                   {"tolerance", r.tolerance},
                   {"samples", r.samples}});
    log << (r.passed ? "PASS " : "FAIL ") << r.name << " worst_violation="
        << format_double(r.worst_violation)
        << " tolerance=" << format_double(r.tolerance) << '\n';
    if (!r.passed &&
        (!worst || r.worst_violation - r.tolerance >
                       worst->worst_violation - worst->tolerance)) {
      worst = &r;
    }
  }

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  try {
    write_file(fs::path(out_dir) / "check_report.json",
               json{{"checks", doc}, {"passed", worst == nullptr}}.dump(2) +
                   "\n");
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  if (worst) {
    log << "check failed: " << worst->name << " (worst violation "
        << format_double(worst->worst_violation) << ")\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace hnep::cli
