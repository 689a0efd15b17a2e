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

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyncolor/adversary.hpp"
#include "dyncolor/engine.hpp"
#include "dyncolor/serialize.hpp"
#include "dyncolor/trace.hpp"

namespace dyncolor {

inline constexpr int kMetricsSchemaVersion = 1;

enum class AdversaryKind { oblivious, conflict, matching, trace };
enum class VerifyMode { off, phase, every };

inline const char* to_string(AdversaryKind a) {
  switch (a) {
    case AdversaryKind::oblivious: return "oblivious";
    case AdversaryKind::conflict: return "conflict";
    case AdversaryKind::matching: return "matching";
    case AdversaryKind::trace: return "trace";
  }
  return "?";
}

inline const char* to_string(VerifyMode v) {
  switch (v) {
    case VerifyMode::off: return "off";
    case VerifyMode::phase: return "phase";
    case VerifyMode::every: return "every";
  }
  return "?";
}

inline const char* to_string(EngineMode m) {
  switch (m) {
    case EngineMode::automatic: return "auto";
    case EngineMode::dynamic: return "dynamic";
    case EngineMode::naive: return "naive";
  }
  return "?";
}

struct RunOptions {
  Vertex n = 0;
  std::uint32_t delta = 0;
  std::uint64_t steps = 0;
  AdversaryKind adversary = AdversaryKind::conflict;
  GraphFamily family = GraphFamily::mixed;  // initial graph of adaptive runs, stream of oblivious ones
  double density = 0.5;
  Config cfg;
  std::uint64_t seed = 1;
  VerifyMode verify = VerifyMode::off;
  EngineMode mode = EngineMode::dynamic;
  std::string trace_path;  // for AdversaryKind::trace
  bool keep_fresh_reports = true;
};

/// Summary statistics of one per-update counter.
struct CounterStats {
  double mean = 0;
  double median = 0;
  std::uint64_t max = 0;

  static CounterStats of(std::vector<std::uint64_t> values) {
    CounterStats s;
    if (values.empty()) return s;
    std::uint64_t total = 0;
    for (auto v : values) total += v;
    s.mean = static_cast<double>(total) / static_cast<double>(values.size());
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    s.median = values.size() % 2 ? static_cast<double>(values[mid])
                                 : (static_cast<double>(values[mid - 1]) + static_cast<double>(values[mid])) / 2.0;
    s.max = values.back();
    return s;
  }
};

struct RunMetrics {
  RunOptions options;
  bool dynamic = false;
  std::uint64_t phase_length = 0;
  std::uint64_t updates = 0;
  std::uint64_t insertions = 0;
  CostMeter totals;
  CounterStats color_trials, class_scans, palette_probes;
  double amortized_ops = 0;     // (handler work + fresh work) / updates
  double amortized_trials = 0;  // (handler + fresh color trials) / updates
  std::uint64_t phases = 0;
  std::uint64_t phase_restarts = 0;
  std::uint64_t fresh_retries = 0;
  std::uint32_t max_sparse_recolors = 0;
  std::uint32_t max_steal_depth = 0;
  std::uint64_t sweeps = 0;
  std::map<std::string, std::uint64_t> violation_counts;
  ViolationReport first_violations;  // at most 20
  std::vector<FreshReport> fresh;
  std::uint64_t fresh_trials = 0;
  double seconds = 0;
  bool engine_failed = false;
  std::string failure;

  std::uint64_t violations() const {
    std::uint64_t total = 0;
    for (const auto& [k, v] : violation_counts) total += v;
    return total;
  }
};

/// Drives one engine against one adversary. The engine and, for adaptive
/// adversaries, the initial graph are built from options.seed.
class Runner {
 public:
  explicit Runner(RunOptions opts) : opts_(std::move(opts)) {}

  RunMetrics run() {
    RunMetrics m;
    m.options = opts_;
    const auto start = std::chrono::steady_clock::now();
    try {
      execute(m);
    } catch (const EngineFailure& e) {
      m.engine_failed = true;
      m.failure = e.what();
    }
    m.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return m;
  }

  /// The engine after run(); null before.
  const Engine* engine() const { return engine_.get(); }

 private:
  void sweep(RunMetrics& m) {
    ++m.sweeps;
    ViolationReport report = engine_->verify();
    append(report, engine_->verify_balance());
    for (auto& v : report) {
      ++m.violation_counts[to_string(v.kind)];
      if (m.first_violations.size() < 20) m.first_violations.push_back(std::move(v));
    }
  }

  void execute(RunMetrics& m) {
    std::vector<Update> stream;
    std::unique_ptr<std::ifstream> trace_file;
    std::unique_ptr<TraceReader> reader;
    Rng adversary_rng(opts_.seed, 0xad);
    EngineOptions eo{opts_.mode, AcdPolicy::lenient};

    if (opts_.adversary == AdversaryKind::trace) {
      trace_file = std::make_unique<std::ifstream>(opts_.trace_path, std::ios::binary);
      if (!*trace_file) throw Error("cannot open trace '" + opts_.trace_path + "'");
      reader = std::make_unique<TraceReader>(*trace_file);
      opts_.n = reader->header().n;
      opts_.delta = reader->header().delta;
      m.options = opts_;
      engine_ = std::make_unique<Engine>(opts_.n, opts_.delta, opts_.cfg, opts_.seed, eo);
    } else if (opts_.adversary == AdversaryKind::oblivious) {
      stream = oblivious_adversary(opts_.n, opts_.delta, opts_.steps, opts_.density, opts_.seed, opts_.family);
      engine_ = std::make_unique<Engine>(opts_.n, opts_.delta, opts_.cfg, opts_.seed, eo);
    } else {
      Rng graph_rng(opts_.seed, 0x9a);
      GeneratedGraph initial = generate_graph(opts_.family, opts_.n, opts_.delta, opts_.density, graph_rng);
      engine_ = std::make_unique<Engine>(std::move(initial.graph), opts_.cfg, opts_.seed, eo);
    }
    Engine& e = *engine_;
    m.dynamic = e.uses_decomposition();
    m.phase_length = e.phase_length();
    if (opts_.verify != VerifyMode::off) sweep(m);

    std::vector<std::uint64_t> trials, scans, probes;
    const CostMeter before = e.meter();
    const std::size_t fresh_before = e.fresh_reports().size();
    for (std::uint64_t step = 0;; ++step) {
      std::optional<Update> up;
      switch (opts_.adversary) {
        case AdversaryKind::trace: up = reader->next(); break;
        case AdversaryKind::oblivious:
          if (step < stream.size()) up = stream[step];
          break;
        case AdversaryKind::conflict:
          if (step < opts_.steps) up = conflict_adversary(e.view(), adversary_rng);
          break;
        case AdversaryKind::matching:
          if (step < opts_.steps) up = matching_attacker(e.view(), e.decomposition(), adversary_rng);
          break;
      }
      if (!up) break;
      const CostReport r = e.apply(*up);
      ++m.updates;
      m.insertions += up->is_insert() ? 1 : 0;
      trials.push_back(r.cost.color_trials);
      scans.push_back(r.cost.class_scans);
      probes.push_back(r.cost.palette_probes);
      m.max_sparse_recolors = std::max(m.max_sparse_recolors, r.sparse_recolors);
      m.max_steal_depth = std::max(m.max_steal_depth, r.max_steal_depth);
      if (opts_.verify == VerifyMode::every || (opts_.verify == VerifyMode::phase && r.phase_started)) sweep(m);
    }
    if (opts_.verify == VerifyMode::phase) sweep(m);

    m.totals = e.meter() - before;
    m.color_trials = CounterStats::of(std::move(trials));
    m.class_scans = CounterStats::of(std::move(scans));
    m.palette_probes = CounterStats::of(std::move(probes));
    for (std::size_t i = fresh_before; i < e.fresh_reports().size(); ++i) {
      m.fresh_trials += e.fresh_reports()[i].trial_count;
      if (opts_.keep_fresh_reports) m.fresh.push_back(e.fresh_reports()[i]);
    }
    m.phases = e.phases();
    m.phase_restarts = e.phase_restarts();
    m.fresh_retries = e.fresh_retries();
    if (m.updates > 0) {
      const double u = static_cast<double>(m.updates);
      m.amortized_ops = static_cast<double>(m.totals.work() + m.totals.fresh_work) / u;
      m.amortized_trials = static_cast<double>(m.totals.color_trials + m.fresh_trials) / u;
    }
  }

  RunOptions opts_;
  std::unique_ptr<Engine> engine_;
};

inline Json to_json(const CounterStats& s) { return {{"mean", s.mean}, {"median", s.median}, {"max", s.max}}; }

/// Metrics document. Everything outside "timing" is a pure function of
/// (seed, stream, config).
inline Json to_json(const RunMetrics& m) {
  const RunOptions& o = m.options;
  Json header = {{"n", o.n},
                 {"delta", o.delta},
                 {"adversary", to_string(o.adversary)},
                 {"family", to_string(o.family)},
                 {"density", o.density},
                 {"steps", o.steps},
                 {"seed", o.seed},
                 {"mode", to_string(o.mode)},
                 {"dynamic", m.dynamic},
                 {"verify", to_string(o.verify)},
                 {"epsilon", o.cfg.epsilon},
                 {"zeta", o.cfg.zeta},
                 {"gamma", o.cfg.gamma},
                 {"delta_const", o.cfg.delta_const},
                 {"c_bal", o.cfg.c_bal},
                 {"phase_length", m.phase_length}};
  if (o.adversary == AdversaryKind::trace) header["trace"] = o.trace_path;
  Json fresh = Json::array();
  for (const auto& r : m.fresh) fresh.push_back(to_json(r));
  Json counts = Json::object();
  for (const auto& [k, v] : m.violation_counts) counts[k] = v;
  const double per_update = m.updates ? m.seconds / static_cast<double>(m.updates) : 0.0;
  return {{"schema_version", kMetricsSchemaVersion},
          {"header", std::move(header)},
          {"updates", m.updates},
          {"insertions", m.insertions},
          {"totals", to_json(m.totals)},
          {"per_update",
           {{"color_trials", to_json(m.color_trials)},
            {"class_scans", to_json(m.class_scans)},
            {"palette_probes", to_json(m.palette_probes)}}},
          {"amortized_ops", m.amortized_ops},
          {"amortized_trials", m.amortized_trials},
          {"phases", m.phases},
          {"phase_restarts", m.phase_restarts},
          {"fresh_retries", m.fresh_retries},
          {"max_sparse_recolors", m.max_sparse_recolors},
          {"max_steal_depth", m.max_steal_depth},
          {"sweeps", m.sweeps},
          {"violation_counts", std::move(counts)},
          {"violations", to_json(m.first_violations)},
          {"engine_failure", m.engine_failed ? Json(m.failure) : Json(nullptr)},
          {"fresh", std::move(fresh)},
          {"timing", {{"seconds", m.seconds}, {"seconds_per_update", per_update}}}};
}

}  // namespace dyncolor
