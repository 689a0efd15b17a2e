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
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dyncolor/coloring_state.hpp"
#include "dyncolor/cost_meter.hpp"
#include "dyncolor/decomposition.hpp"
#include "dyncolor/graph.hpp"
#include "dyncolor/recolor.hpp"
#include "dyncolor/rng.hpp"
#include "dyncolor/verifier.hpp"

namespace dyncolor {

/// Summary of one fresh coloring, computed from the final state.
struct FreshReport {
  std::uint64_t trial_count = 0;    // all color trials
  std::uint64_t sparse_trials = 0;  // trials inside RecolorSparse
  std::uint64_t one_shot_colored = 0;
  std::uint64_t min_sparse_slack = 0;  // min over S of |L_S(v)|; palette size when S is empty
  std::uint64_t max_class_size = 0;    // max over χ of |Φ[χ] ∩ S|
  std::vector<std::uint64_t> matching_sizes;
  std::uint64_t work = 0;

  friend bool operator==(const FreshReport&, const FreshReport&) = default;
};

/// Each v ∈ S takes a uniform color with probability 1/8; both endpoints of
/// every monochromatic edge inside S are then uncolored.
inline std::uint64_t one_shot_coloring(const DynamicGraph& g, const Decomposition& d, ColoringState& state,
                                       Rng& rng, CostMeter& meter) {
  const Color top = state.palette_size();
  const std::vector<Vertex> sparse = d.sparse_vertices();
  for (Vertex v : sparse) {
    if (rng.bernoulli(1, 8)) {
      const auto chi = static_cast<Color>(rng.uniform(1, top));
      ++meter.color_trials;
      state.set_color(v, chi);
      ++meter.recolorings;
    }
  }
  std::vector<Vertex> conflicted;
  for (Color chi = 1; chi <= top; ++chi) {
    const auto& cls = state.color_class(chi);
    for (auto a = cls.begin(); a != cls.end(); ++a) {
      for (auto b = std::next(a); b != cls.end(); ++b) {
        ++meter.class_scans;
        if (g.has_edge(*a, *b)) {
          conflicted.push_back(*a);
          conflicted.push_back(*b);
        }
      }
    }
  }
  for (Vertex v : conflicted) {
    if (state.colored(v)) {
      state.set_color(v, kNoColor);
      ++meter.uncolorings;
    }
  }
  return sparse.size() - static_cast<std::uint64_t>(std::count_if(sparse.begin(), sparse.end(),
                                                                   [&](Vertex v) { return !state.colored(v); }));
}

/// Samples the clique palette until a color unused by N(v) comes up.
inline void color_dense(const DynamicGraph& g, const Decomposition& d, ColoringState& state, Vertex v, Rng& rng,
                        CostMeter& meter, std::uint64_t cap) {
  const auto& palette = state.clique_palette(d.part(v));
  for (std::uint64_t trial = 0; trial < cap; ++trial) {
    if (palette.empty()) throw PaletteExhausted("clique palette empty when coloring " + std::to_string(v));
    const Color chi = palette.sample(rng);
    ++meter.color_trials;
    bool ok = true;
    for (Vertex u : state.color_class(chi)) {
      ++meter.class_scans;
      if (g.has_edge(u, v)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      state.set_color(v, chi);
      ++meter.recolorings;
      return;
    }
  }
  throw FreshFailed("ColorDense(" + std::to_string(v) + ") exhausted " + std::to_string(cap) + " trials");
}

/// min over S of |L_S(v)| and max over χ of |Φ[χ] ∩ S|.
inline void measure_sparse_properties(const DynamicGraph& g, const Decomposition& d, const ColoringState& state,
                                      FreshReport& report) {
  report.min_sparse_slack = state.palette_size();
  for (Vertex v : d.sparse_vertices()) {
    report.min_sparse_slack =
        std::min<std::uint64_t>(report.min_sparse_slack, sparse_palette(state, g, d, v).size());
  }
  report.max_class_size = 0;
  for (Color c = 1; c <= state.palette_size(); ++c) {
    std::uint64_t k = 0;
    for (Vertex v : state.color_class(c)) k += d.is_sparse(v) ? 1 : 0;
    report.max_class_size = std::max(report.max_class_size, k);
  }
}

/// Recomputes a total coloring from scratch for a new phase. `state` is
/// rebound to `d`; the matching is rebuilt.
inline FreshReport fresh_coloring(const DynamicGraph& g, const Decomposition& d, ColoringState& state,
                                  Rng& rng, CostMeter& meter, RetryCaps caps) {
  CostMeter local;
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (state.colored(v)) {
      state.set_color(v, kNoColor);
      ++local.uncolorings;
    }
  }
  state.clear_matching();
  state.bind(d);
  local.palette_probes += d.clique_count() * state.palette_size();

  FreshReport report;
  report.one_shot_colored = one_shot_coloring(g, d, state, rng, local);

  Recolorer rc(g, d, state, rng, local, caps);
  std::vector<Vertex> order = d.sparse_vertices();
  rng.shuffle(order);
  try {
    for (Vertex v : order) {
      if (!state.colored(v)) rc.recolor_sparse(v);
    }
    for (std::uint32_t i = 0; i < d.clique_count(); ++i) {
      const std::int64_t target = d.clique(i).matching_target();
      for (std::int64_t k = 0; k < target; ++k) rc.add_anti_edge_matching(i);
      const auto& members = d.clique(i).members;
      for (Vertex v : members) {
        if (!state.colored(v) && !d.is_inlier(v)) color_dense(g, d, state, v, rng, local, caps.dense);
      }
      for (Vertex v : members) {
        if (!state.colored(v) && d.is_inlier(v)) color_dense(g, d, state, v, rng, local, caps.dense);
      }
    }
  } catch (const PhaseRestart& e) {
    meter.fresh_work += local.work();
    throw FreshFailed(std::string("fresh coloring: ") + e.what());
  } catch (const FreshFailed&) {
    meter.fresh_work += local.work();
    throw;
  }

  report.trial_count = local.color_trials;
  report.sparse_trials = rc.sparse_trials();
  for (std::uint32_t i = 0; i < d.clique_count(); ++i) report.matching_sizes.push_back(state.redundant_count(i));
  measure_sparse_properties(g, d, state, report);
  report.work = local.work();
  meter.fresh_work += report.work;
  return report;
}

/// Sparse Slack (|L_S(v)| ≥ 3γζ), Sparse Balance (|Φ[χ] ∩ S| ≤
/// C_bal·(n/ζ + log₂ n)), Dense Balance and the Matching property.
inline ViolationReport verify_fresh_properties(const DynamicGraph& g, const Decomposition& d,
                                               const ColoringState& state, const Config& cfg) {
  ViolationReport out;
  const double slack = 3.0 * cfg.gamma * cfg.zeta;
  for (Vertex v : d.sparse_vertices()) {
    const auto size = sparse_palette(state, g, d, v).size();
    if (static_cast<double>(size) < slack) {
      out.push_back({ViolationKind::fresh_slack, {v}, "|L_S(v)| = " + std::to_string(size)});
    }
  }
  append(out, check_balance(state, d, cfg, 0));
  append(out, check_invariants(g, d, state, cfg,
                               static_cast<InvariantScope>(static_cast<unsigned>(InvariantScope::dense_balance) |
                                                           static_cast<unsigned>(InvariantScope::matching))));
  return out;
}

}  // namespace dyncolor
