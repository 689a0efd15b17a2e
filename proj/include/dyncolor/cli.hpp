// Copyright 2026 The dyncolor Authors
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

#pragma once

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dyncolor/adversary.hpp"
#include "dyncolor/decomposition.hpp"
#include "dyncolor/runner.hpp"
#include "dyncolor/serialize.hpp"
#include "dyncolor/trace.hpp"

namespace dyncolor {

enum ExitCode : int { kExitClean = 0, kExitViolation = 1, kExitUsage = 2, kExitEngineFailure = 3 };

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t k = std::min(x.size(), y.size());
  if (k < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double kk = static_cast<double>(k);
  return (kk * sxy - sx * sy) / (kk * sxx - sx * sx);
}

namespace cli {

struct ConfigFlags {
  std::string epsilon = "auto";
  std::string zeta = "auto";
  double gamma = Config{}.gamma;
  double delta_const = Config{}.delta_const;
  double c_bal = Config{}.c_bal;

  void add_to(CLI::App* app) {
    app->add_option("--epsilon", epsilon, "density parameter, or 'auto'")->capture_default_str();
    app->add_option("--zeta", zeta, "sparsity parameter, or 'auto' for ceil(n^(2/3))")->capture_default_str();
    app->add_option("--gamma", gamma, "phase length constant, t = floor(gamma*zeta)")->capture_default_str();
    app->add_option("--delta-const", delta_const, "sparsity constant of V_sp")->capture_default_str();
    app->add_option("--c-bal", c_bal, "color-class balance constant")->capture_default_str();
  }

  Config build(Vertex n, std::uint32_t delta) const {
    Config cfg = Config::automatic(n, delta);
    cfg.gamma = gamma;
    cfg.delta_const = delta_const;
    cfg.c_bal = c_bal;
    if (zeta != "auto") cfg.zeta = parse_positive(zeta, "--zeta");
    if (epsilon != "auto") {
      cfg.epsilon = parse_positive(epsilon, "--epsilon");
    } else {
      cfg.epsilon = 1.0 / 110;
      if (!cfg.decomposition_regime(delta)) cfg.epsilon = 1.0 / 8;
    }
    if (!(cfg.epsilon < 1.0 / 6)) throw CLI::ValidationError("--epsilon", "must lie in (0, 1/6)");
    if (!(cfg.gamma > 0 && cfg.gamma < 1)) throw CLI::ValidationError("--gamma", "must lie in (0, 1)");
    if (!(cfg.delta_const > 0 && cfg.delta_const <= 1)) {
      throw CLI::ValidationError("--delta-const", "must lie in (0, 1]");
    }
    return cfg;
  }

  static double parse_positive(const std::string& s, const char* flag) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || !(v > 0)) throw CLI::ValidationError(flag, "expected a positive number or 'auto'");
    return v;
  }
};

inline std::uint64_t seed_or_env(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("COLOR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CLI::ValidationError("COLOR_SEED", std::string("not an integer: '") + env + "'");
    }
  }
  return 1;
}

inline void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
}

inline void check_size(Vertex n, std::uint32_t delta) {
  if (n < 2) throw CLI::ValidationError("--n", "need at least two vertices");
  if (delta < 1) throw CLI::ValidationError("--delta", "must be at least 1");
  if (delta >= n) throw CLI::ValidationError("--delta", "must be below n");
}

}  // namespace cli

/// Entry point of the dyncolor tool. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Fully dynamic (Delta+1)-coloring engine and benchmark harness", "dyncolor"};
  app.require_subcommand(1);
  int code = kExitClean;

  // gen
  auto* gen = app.add_subcommand("gen", "write an oblivious update trace");
  Vertex gen_n = 0;
  std::uint32_t gen_delta = 0;
  std::uint64_t gen_steps = 0;
  std::string gen_adversary = "oblivious", gen_family = "random", gen_out;
  double gen_density = 0.5;
  std::optional<std::uint64_t> gen_seed;
  gen->add_option("--n", gen_n, "vertex count")->required();
  gen->add_option("--delta", gen_delta, "degree cap")->required();
  gen->add_option("--steps", gen_steps, "number of updates")->required();
  gen->add_option("--adversary", gen_adversary, "stream kind")->check(CLI::IsMember({"oblivious"}));
  gen->add_option("--family", gen_family, "graph family the stream builds")
      ->check(CLI::IsMember({"random", "planted", "mixed", "bipartite"}));
  gen->add_option("--density", gen_density, "target edge fraction of n*delta/2")->check(CLI::Range(1e-9, 1.0));
  gen->add_option("--seed", gen_seed, "seed (falls back to COLOR_SEED)");
  gen->add_option("--out", gen_out, "output path, '-' for stdout");

  // run
  auto* run = app.add_subcommand("run", "run the engine against an adversary or a trace");
  RunOptions ro;
  std::string run_adversary = "conflict", run_family = "mixed", run_verify = "off", run_mode = "dynamic";
  std::string run_trace, run_out, run_dump_state, run_dump_decomp;
  std::optional<std::uint64_t> run_seed;
  cli::ConfigFlags run_cfg;
  run->add_option("--trace", run_trace, "replay this trace instead of an adversary");
  run->add_option("--adversary", run_adversary, "update source")
      ->check(CLI::IsMember({"oblivious", "conflict", "matching"}));
  run->add_option("--steps", ro.steps, "number of adversary updates");
  run->add_option("--n", ro.n, "vertex count");
  run->add_option("--delta", ro.delta, "degree cap");
  run->add_option("--family", run_family, "initial graph for adaptive runs, stream family for oblivious ones")
      ->check(CLI::IsMember({"random", "planted", "mixed", "bipartite"}));
  run->add_option("--density", ro.density, "edge density of generated graphs")->check(CLI::Range(1e-9, 1.0));
  run_cfg.add_to(run);
  run->add_option("--seed", run_seed, "seed (falls back to COLOR_SEED)");
  run->add_option("--verify", run_verify, "invariant sweeps")->check(CLI::IsMember({"off", "phase", "every"}));
  run->add_option("--mode", run_mode, "engine path")->check(CLI::IsMember({"auto", "dynamic", "naive"}));
  run->add_option("--out", run_out, "metrics JSON path, '-' for stdout");
  run->add_option("--dump-state", run_dump_state, "write the final coloring as JSON");
  run->add_option("--dump-decomposition", run_dump_decomp, "write the final decomposition as JSON");

  // scaling
  auto* scaling = app.add_subcommand("scaling", "amortized cost across an n grid with a log-log fit");
  std::vector<Vertex> grid;
  double sc_ratio = 0.25, sc_density = 0.5;
  std::uint64_t sc_phases = 20, sc_reps = 1;
  std::string sc_adversary = "conflict", sc_family = "random", sc_mode = "both", sc_out, sc_json;
  std::optional<std::uint64_t> sc_seed;
  cli::ConfigFlags sc_cfg;
  scaling->add_option("--n-grid", grid, "comma-separated vertex counts")->delimiter(',')->required();
  scaling->add_option("--delta-ratio", sc_ratio, "delta = ratio * n")->check(CLI::Range(1e-6, 0.99));
  scaling->add_option("--density", sc_density, "initial graph density")->check(CLI::Range(1e-9, 1.0));
  scaling->add_option("--phases", sc_phases, "updates per run = phases * t(n)")->check(CLI::PositiveNumber);
  scaling->add_option("--reps", sc_reps, "repetitions per grid point")->check(CLI::PositiveNumber);
  scaling->add_option("--adversary", sc_adversary, "update source")
      ->check(CLI::IsMember({"oblivious", "conflict", "matching"}));
  scaling->add_option("--family", sc_family, "initial graph family")
      ->check(CLI::IsMember({"random", "planted", "mixed", "bipartite"}));
  scaling->add_option("--mode", sc_mode, "engine paths to measure")
      ->check(CLI::IsMember({"dynamic", "naive", "both"}));
  sc_cfg.add_to(scaling);
  scaling->add_option("--seed", sc_seed, "seed (falls back to COLOR_SEED)");
  scaling->add_option("--out", sc_out, "CSV path, '-' for stdout");
  scaling->add_option("--json", sc_json, "also write the table as JSON");

  // validate
  auto* validate = app.add_subcommand("validate", "build and validate the decomposition of a graph");
  std::string va_trace, va_family = "planted", va_out;
  Vertex va_n = 0;
  std::uint32_t va_delta = 0;
  double va_density = 0.5;
  bool va_strict = false;
  std::optional<std::uint64_t> va_seed;
  cli::ConfigFlags va_cfg;
  validate->add_option("--trace", va_trace, "final graph of this trace");
  validate->add_option("--family", va_family, "generate a graph of this family instead")
      ->check(CLI::IsMember({"random", "planted", "mixed", "bipartite"}));
  validate->add_option("--n", va_n, "vertex count");
  validate->add_option("--delta", va_delta, "degree cap");
  validate->add_option("--density", va_density, "edge density")->check(CLI::Range(1e-9, 1.0));
  validate->add_flag("--strict", va_strict, "fail when a vertex is neither housed nor sparse enough");
  va_cfg.add_to(validate);
  validate->add_option("--seed", va_seed, "seed (falls back to COLOR_SEED)");
  validate->add_option("--out", va_out, "JSON path, '-' for stdout");

  gen->callback([&] {
    cli::check_size(gen_n, gen_delta);
    const std::uint64_t seed = cli::seed_or_env(gen_seed);
    const auto stream = oblivious_adversary(gen_n, gen_delta, gen_steps, gen_density, seed, parse_family(gen_family));
    std::ostringstream text;
    write_trace(text, TraceHeader{gen_n, gen_delta}, stream);
    cli::write_text(gen_out, text.str(), out);
  });

  run->callback([&] {
    ro.seed = cli::seed_or_env(run_seed);
    ro.verify = run_verify == "every" ? VerifyMode::every : run_verify == "phase" ? VerifyMode::phase : VerifyMode::off;
    ro.mode = run_mode == "naive" ? EngineMode::naive : run_mode == "auto" ? EngineMode::automatic : EngineMode::dynamic;
    ro.family = parse_family(run_family);
    if (!run_trace.empty()) {
      ro.adversary = AdversaryKind::trace;
      ro.trace_path = run_trace;
      std::ifstream probe(run_trace, std::ios::binary);
      if (!probe) throw CLI::ValidationError("--trace", "cannot open '" + run_trace + "'");
      TraceReader header(probe);
      ro.n = header.header().n;
      ro.delta = header.header().delta;
    } else {
      ro.adversary = run_adversary == "oblivious" ? AdversaryKind::oblivious
                     : run_adversary == "matching" ? AdversaryKind::matching
                                                   : AdversaryKind::conflict;
      if (run->count("--steps") == 0) throw CLI::ValidationError("--steps", "required without --trace");
    }
    cli::check_size(ro.n, ro.delta);
    ro.cfg = run_cfg.build(ro.n, ro.delta);
    ro.keep_fresh_reports = true;
    Runner runner(ro);
    const RunMetrics m = runner.run();
    cli::write_text(run_out, to_json(m).dump(2) + "\n", out);
    if (const Engine* e = runner.engine()) {
      if (!run_dump_state.empty()) cli::write_text(run_dump_state, to_json(e->state()).dump() + "\n", out);
      if (!run_dump_decomp.empty()) {
        cli::write_text(run_dump_decomp, to_json(e->decomposition()).dump() + "\n", out);
      }
    }
    if (m.engine_failed) {
      err << "engine failure: " << m.failure << "\n";
      code = kExitEngineFailure;
    } else if (m.violations() > 0) {
      err << m.violations() << " invariant violations\n";
      code = kExitViolation;
    }
  });

  scaling->callback([&] {
    if (grid.empty()) throw CLI::ValidationError("--n-grid", "empty grid");
    const std::uint64_t seed = cli::seed_or_env(sc_seed);
    std::vector<EngineMode> modes;
    if (sc_mode != "naive") modes.push_back(EngineMode::dynamic);
    if (sc_mode != "dynamic") modes.push_back(EngineMode::naive);
    struct Row {
      Vertex n;
      std::uint32_t delta;
      EngineMode mode;
      double ops;
      double trials;
    };
    std::vector<Row> rows;
    for (EngineMode mode : modes) {
      for (Vertex n : grid) {
        const auto delta = static_cast<std::uint32_t>(std::max(1.0, std::floor(sc_ratio * n)));
        cli::check_size(n, delta);
        RunOptions o;
        o.n = n;
        o.delta = delta;
        o.cfg = sc_cfg.build(n, delta);
        o.steps = sc_phases * o.cfg.phase_length();
        o.adversary = sc_adversary == "oblivious" ? AdversaryKind::oblivious
                      : sc_adversary == "matching" ? AdversaryKind::matching
                                                   : AdversaryKind::conflict;
        o.family = parse_family(sc_family);
        o.density = sc_density;
        o.mode = mode;
        o.keep_fresh_reports = false;
        double ops = 0, trials = 0;
        for (std::uint64_t rep = 0; rep < sc_reps; ++rep) {
          o.seed = seed + rep;
          const RunMetrics m = Runner(o).run();
          if (m.engine_failed) throw EngineFailure(m.failure);
          ops += m.amortized_ops;
          trials += m.amortized_trials;
        }
        rows.push_back({n, delta, mode, ops / static_cast<double>(sc_reps), trials / static_cast<double>(sc_reps)});
      }
    }
    std::ostringstream csv;
    csv << "n,delta,adversary,mode,amortized_ops,amortized_trials,slope\n";
    Json table = Json::array();
    for (EngineMode mode : modes) {
      std::vector<double> xs, ys;
      for (const Row& r : rows) {
        if (r.mode != mode) continue;
        xs.push_back(r.n);
        ys.push_back(r.ops);
      }
      const double slope = loglog_slope(xs, ys);
      for (const Row& r : rows) {
        if (r.mode != mode) continue;
        csv << r.n << ',' << r.delta << ',' << sc_adversary << ',' << to_string(mode) << ',' << r.ops << ','
            << r.trials << ',' << slope << '\n';
        table.push_back({{"n", r.n},
                         {"delta", r.delta},
                         {"adversary", sc_adversary},
                         {"mode", to_string(mode)},
                         {"amortized_ops", r.ops},
                         {"amortized_trials", r.trials},
                         {"slope", slope}});
      }
    }
    cli::write_text(sc_out, csv.str(), out);
    if (!sc_json.empty()) cli::write_text(sc_json, table.dump(2) + "\n", out);
  });

  validate->callback([&] {
    const std::uint64_t seed = cli::seed_or_env(va_seed);
    std::optional<DynamicGraph> graph;
    if (!va_trace.empty()) {
      TraceHeader header;
      const auto stream = replay_trace(va_trace, &header);
      graph.emplace(header.n, header.delta);
      for (const Update& u : stream) {
        if (u.is_insert()) {
          graph->insert_edge(u.u, u.v);
        } else {
          graph->delete_edge(u.u, u.v);
        }
      }
    } else {
      cli::check_size(va_n, va_delta);
      Rng rng(seed, 0x9a);
      graph.emplace(generate_graph(parse_family(va_family), va_n, va_delta, va_density, rng).graph);
    }
    const Config cfg = va_cfg.build(graph->n(), graph->delta());
    Json doc;
    try {
      const Decomposition d =
          build_decomposition(*graph, cfg, va_strict ? AcdPolicy::strict : AcdPolicy::lenient);
      const DecompositionReport report = validate_decomposition(d, *graph, cfg);
      doc = {{"ok", report.ok()}, {"decomposition", to_json(d)}, {"violations", to_json(report)}};
      if (!report.ok()) code = kExitViolation;
    } catch (const DecompositionFailed& e) {
      doc = {{"ok", false}, {"error", e.what()}};
      code = kExitViolation;
    }
    cli::write_text(va_out, doc.dump(2) + "\n", out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitClean : kExitUsage;
  } catch (const ParseError& e) {
    err << "trace: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EngineFailure& e) {
    err << "engine failure: " << e.what() << "\n";
    return kExitEngineFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return code;
}

}  // namespace dyncolor
