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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dyncolor/coloring_state.hpp"
#include "dyncolor/cost_meter.hpp"
#include "dyncolor/decomposition.hpp"
#include "dyncolor/fresh_coloring.hpp"
#include "dyncolor/graph.hpp"
#include "dyncolor/recolor.hpp"
#include "dyncolor/rng.hpp"
#include "dyncolor/update.hpp"
#include "dyncolor/verifier.hpp"

namespace dyncolor {

enum class EngineMode {
  automatic,  // decomposition path when Δ ≥ ζ/(ε²δ), naive otherwise
  dynamic,
  naive,
};

struct EngineOptions {
  EngineMode mode = EngineMode::automatic;
  AcdPolicy acd = AcdPolicy::lenient;
};

/// What an adaptive adversary may look at: the graph, φ and the matching.
class AdversaryView {
 public:
  AdversaryView(const DynamicGraph& g, const ColoringState& s) : g_(&g), s_(&s) {}
  const DynamicGraph& graph() const { return *g_; }
  Color color(Vertex v) const { return s_->color(v); }
  const std::vector<Color>& colors() const { return s_->colors(); }
  Vertex matched(Vertex v) const { return s_->matched(v); }
  const std::set<Vertex>& color_class(Color c) const { return s_->color_class(c); }
  std::uint32_t palette_size() const { return s_->palette_size(); }

 private:
  const DynamicGraph* g_;
  const ColoringState* s_;
};

/// Fully dynamic (Δ+1)-coloring. Each apply() keeps the coloring proper and
/// total; every t updates a new phase recomputes the decomposition and a
/// fresh coloring.
class Engine {
 public:
  Engine(Vertex n, std::uint32_t delta, Config cfg, std::uint64_t seed, EngineOptions opts = {})
      : Engine(DynamicGraph(n, delta), cfg, seed, opts) {}

  Engine(DynamicGraph initial, Config cfg, std::uint64_t seed, EngineOptions opts = {})
      : g_(std::move(initial)),
        cfg_(cfg),
        opts_(opts),
        rng_(seed),
        state_(g_.n(), g_.delta()),
        d_(Decomposition::all_sparse(g_.n())) {
    dynamic_ = opts_.mode == EngineMode::dynamic ||
               (opts_.mode == EngineMode::automatic && cfg_.decomposition_regime(g_.delta()));
    phase_length_ = cfg_.phase_length();
    caps_ = RetryCaps::standard(g_.n(), g_.delta(), phase_length_);
    state_.bind(d_);
    if (dynamic_) {
      start_phase();
    } else {
      Recolorer rc(g_, d_, state_, rng_, meter_, caps_);
      for (Vertex v = 1; v <= g_.n(); ++v) rc.naive_recolor(v);
    }
  }

  CostReport apply(const Update& up) {
    const CostMeter before = meter_;
    CostReport report;
    Recolorer rc(g_, d_, state_, rng_, meter_, caps_);
    bool restart = false;
    try {
      if (up.is_insert()) {
        handle_insert(rc, up.u, up.v);
      } else {
        handle_delete(rc, up.u, up.v);
      }
    } catch (const PhaseRestart&) {
      if (!dynamic_) throw;
      restart = true;
    }
    report.sparse_recolors = rc.sparse_recolors();
    report.max_steal_depth = rc.max_steal_depth();
    ++updates_;
    if (dynamic_) {
      ++counter_;
      if (restart || counter_ >= phase_length_) {
        report.phase_started = true;
        report.phase_restart = restart;
        phase_restarts_ += restart ? 1 : 0;
        report.fresh_retries = start_phase();
      }
    }
    report.cost = meter_ - before;
    return report;
  }

  const DynamicGraph& graph() const { return g_; }
  const Decomposition& decomposition() const { return d_; }
  const ColoringState& state() const { return state_; }
  const Config& config() const { return cfg_; }
  const CostMeter& meter() const { return meter_; }
  const RetryCaps& caps() const { return caps_; }
  bool uses_decomposition() const { return dynamic_; }
  std::uint64_t phase_length() const { return phase_length_; }
  std::uint64_t phase_counter() const { return counter_; }
  std::uint64_t updates() const { return updates_; }
  std::uint64_t phases() const { return phases_; }
  std::uint64_t phase_restarts() const { return phase_restarts_; }
  std::uint64_t fresh_retries() const { return fresh_retries_; }
  const std::vector<FreshReport>& fresh_reports() const { return fresh_reports_; }
  AdversaryView view() const { return AdversaryView(g_, state_); }

  /// Propriety, dense invariants, accounting, view consistency and balance.
  ViolationReport verify(InvariantScope scope = InvariantScope::all) const {
    ViolationReport out = check_proper(g_, state_);
    if (dynamic_) {
      append(out, check_invariants(g_, d_, state_, cfg_, scope));
    }
    return out;
  }

  /// The balance sweep, kept apart from verify() since its constant is
  /// calibrated rather than exact.
  ViolationReport verify_balance() const { return check_balance(state_, d_, cfg_, counter_); }

  // Test access: forcing rng draws and building hand-made states.
  Rng& rng() { return rng_; }
  ColoringState& mutable_state() { return state_; }
  Recolorer recolorer() { return Recolorer(g_, d_, state_, rng_, meter_, caps_); }

  /// Adopts a caller-built decomposition and coloring without running a
  /// fresh phase. The counter restarts at zero.
  void install(Decomposition d, ColoringState s) {
    d_ = std::move(d);
    state_ = std::move(s);
    state_.bind(d_);
    dynamic_ = true;
    counter_ = 0;
  }

 private:
  void handle_insert(Recolorer& rc, Vertex u, Vertex v) {
    g_.insert_edge(u, v);
    if (!dynamic_) {
      if (state_.color(u) == state_.color(v)) {
        rc.color(u, kNoColor);
        rc.naive_recolor(u);
      }
      return;
    }
    const bool inside = d_.same_clique(u, v);
    const std::int64_t anti_u = d_.is_sparse(u) ? 0 : d_.clique(d_.part(u)).anti_sum;
    const std::int64_t anti_v = d_.is_sparse(v) ? 0 : d_.clique(d_.part(v)).anti_sum;
    d_.on_insert(u, v);
    if (!inside && ((!d_.is_sparse(u) && d_.clique(d_.part(u)).anti_sum != anti_u) ||
                    (!d_.is_sparse(v) && d_.clique(d_.part(v)).anti_sum != anti_v))) {
      throw std::logic_error("cross-clique insertion changed a_D");
    }
    if (state_.color(u) == state_.color(v)) {
      rc.color(u, kNoColor);
      // Only an edge joining the pair itself kills the matched anti-edge; a
      // conflict from outside recolors the pair below.
      if (state_.matched(u) == v) state_.unmatch(u);
    }
    if (inside) restore_matching(rc, d_.part(u));
    if (!state_.colored(u)) {
      if (d_.is_sparse(u)) {
        rc.recolor_sparse(u);
      } else if (const Vertex w = state_.matched(u); w != kNoVertex) {
        rc.recolor_matching(u, w);
      } else {
        rc.recolor_dense(u);
      }
    }
  }

  void handle_delete(Recolorer& rc, Vertex u, Vertex v) {
    g_.delete_edge(u, v);
    if (!dynamic_) return;
    const bool inside = d_.same_clique(u, v);
    d_.on_delete(u, v);
    if (inside) restore_matching(rc, d_.part(u));
  }

  void restore_matching(Recolorer& rc, std::uint32_t clique) {
    if (static_cast<std::int64_t>(state_.redundant_count(clique)) < d_.clique(clique).matching_target()) {
      rc.add_anti_edge_matching(clique);
    }
  }

  /// New decomposition, then a fresh coloring with one re-seeded retry.
  /// Returns the number of retries used.
  std::uint32_t start_phase() {
    d_ = build_decomposition(g_, cfg_, opts_.acd, &meter_.decomposition_work);
    counter_ = 0;
    ++phases_;
    for (std::uint32_t attempt = 0;; ++attempt) {
      try {
        fresh_reports_.push_back(fresh_coloring(g_, d_, state_, rng_, meter_, caps_));
        return attempt;
      } catch (const FreshFailed& e) {
        if (attempt >= 1) throw EngineFailure(std::string("fresh coloring failed after a re-seed: ") + e.what());
        ++fresh_retries_;
        rng_ = rng_.split(phases_);
      }
    }
  }

  DynamicGraph g_;
  Config cfg_;
  EngineOptions opts_;
  Rng rng_;
  ColoringState state_;
  Decomposition d_;
  CostMeter meter_;
  RetryCaps caps_;
  bool dynamic_ = false;
  std::uint64_t phase_length_ = 1;
  std::uint64_t counter_ = 0;
  std::uint64_t updates_ = 0;
  std::uint64_t phases_ = 0;
  std::uint64_t phase_restarts_ = 0;
  std::uint64_t fresh_retries_ = 0;
  std::vector<FreshReport> fresh_reports_;
};

}  // namespace dyncolor
