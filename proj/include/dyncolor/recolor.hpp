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
#include <string>
#include <vector>

#include "dyncolor/coloring_state.hpp"
#include "dyncolor/cost_meter.hpp"
#include "dyncolor/decomposition.hpp"
#include "dyncolor/graph.hpp"
#include "dyncolor/rng.hpp"
#include "dyncolor/types.hpp"

namespace dyncolor {

inline std::uint64_t ceil_log2(std::uint64_t n) {
  std::uint64_t k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return std::max<std::uint64_t>(k, 1);
}

/// Trial budgets before a recoloring gives up and asks for a new phase.
struct RetryCaps {
  std::uint64_t sparse = 0;    // RecolorSparse and the outlier path of RecolorDense
  std::uint64_t matching = 0;  // RecolorMatching and AddAntiEdgeMatching
  std::uint64_t dense = 0;     // ColorDense during fresh coloring

  /// ⌈8(Δ+1)/t⌉·⌈log₂ n⌉ and ⌈8·log₂ n⌉.
  static RetryCaps standard(Vertex n, std::uint32_t delta, std::uint64_t phase_length) {
    RetryCaps caps;
    const std::uint64_t lg = ceil_log2(n);
    const std::uint64_t t = std::max<std::uint64_t>(phase_length, 1);
    caps.sparse = ((8 * (static_cast<std::uint64_t>(delta) + 1) + t - 1) / t) * lg;
    caps.matching = static_cast<std::uint64_t>(std::ceil(8.0 * std::log2(std::max<double>(n, 2))));
    caps.dense = 8 * (static_cast<std::uint64_t>(delta) + 1) * lg;
    return caps;
  }
};

/// The recoloring procedures run inside a phase. Borrowing view over the
/// engine's state; the decomposition is only read.
class Recolorer {
 public:
  Recolorer(const DynamicGraph& g, const Decomposition& d, ColoringState& state, Rng& rng, CostMeter& meter,
            RetryCaps caps)
      : g_(g), d_(d), state_(state), rng_(rng), meter_(meter), caps_(caps) {}

  /// Sets a color and meters it. Colorings of S vertices are counted.
  void color(Vertex v, Color c) {
    state_.set_color(v, c);
    if (c == kNoColor) {
      ++meter_.uncolorings;
    } else {
      ++meter_.recolorings;
      if (d_.is_sparse(v)) ++sparse_recolors_;
    }
  }

  /// Random trials over [Δ+1]: accept χ unused by sparser neighbors and by
  /// at most one denser neighbor, stealing from that one.
  void recolor_sparse(Vertex v) {
    const Color top = state_.palette_size();
    for (std::uint64_t trial = 0; trial < caps_.sparse; ++trial) {
      const auto chi = static_cast<Color>(rng_.uniform(1, top));
      ++meter_.color_trials;
      ++sparse_trials_;
      Vertex w = kNoVertex;
      bool ok = true;
      for (Vertex u : state_.color_class(chi)) {
        ++meter_.class_scans;
        if (u == v || !g_.has_edge(u, v)) continue;
        if (d_.is_sparse(u) || w != kNoVertex) {
          ok = false;
          break;
        }
        w = u;
      }
      if (!ok) continue;
      if (w == kNoVertex) {
        color(v, chi);
        return;
      }
      color(w, kNoColor);
      color(v, chi);
      StealScope scope(*this);
      const Vertex partner = state_.matched(w);
      if (partner == kNoVertex) {
        recolor_dense(w);
      } else {
        recolor_matching(w, partner);
      }
      return;
    }
    throw PhaseRestart("RecolorSparse(" + std::to_string(v) + ") exhausted " + std::to_string(caps_.sparse) +
                       " trials");
  }

  /// Unmatched denser v: inliers take the smallest color of L(D) \ φ(E(v));
  /// outliers sample like sparser vertices and may steal from one unmatched
  /// inlier of D.
  void recolor_dense(Vertex v) {
    const std::uint32_t clique = d_.part(v);
    if (d_.is_inlier(v)) {
      std::vector<char> blocked(static_cast<std::size_t>(state_.palette_size()) + 1, 0);
      for (Vertex w : d_.external(v)) {
        ++meter_.class_scans;
        blocked[state_.color(w)] = 1;
      }
      for (Color chi : state_.clique_palette(clique)) {
        ++meter_.palette_probes;
        if (!blocked[chi]) {
          color(v, chi);
          return;
        }
      }
      throw InlierPaletteEmpty("no color of L(D) free for inlier " + std::to_string(v));
    }
    const Color top = state_.palette_size();
    for (std::uint64_t trial = 0; trial < caps_.sparse; ++trial) {
      const auto chi = static_cast<Color>(rng_.uniform(1, top));
      ++meter_.color_trials;
      ++meter_.palette_probes;
      if (state_.is_redundant(clique, chi)) continue;
      Vertex inlier = kNoVertex;
      bool ok = true;
      for (Vertex u : state_.color_class(chi)) {
        ++meter_.class_scans;
        if (u == v) continue;
        const bool inside = d_.part(u) == clique;
        if (inside) {
          // The single holder in D: only an unmatched inlier may give it up.
          if (!d_.is_inlier(u) || state_.matched(u) != kNoVertex) {
            ok = false;
            break;
          }
          inlier = u;
        } else if (g_.has_edge(u, v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (inlier == kNoVertex) {
        color(v, chi);
        return;
      }
      color(inlier, kNoColor);
      color(v, chi);
      StealScope scope(*this);
      recolor_dense(inlier);
      return;
    }
    throw PhaseRestart("RecolorDense(" + std::to_string(v) + ") exhausted " + std::to_string(caps_.sparse) +
                       " trials");
  }

  /// Same-colors the anti-edge {u, v} with some χ ∉ M_D unused by E(u) ∪ E(v),
  /// stealing χ from its holder in D if there is one.
  void recolor_matching(Vertex u, Vertex v) {
    if (state_.matched(u) == kNoVertex && state_.matched(v) == kNoVertex) state_.match(u, v);
    const std::uint32_t clique = d_.part(u);
    const Color top = state_.palette_size();
    for (std::uint64_t trial = 0; trial < caps_.matching; ++trial) {
      const auto chi = static_cast<Color>(rng_.uniform(1, top));
      ++meter_.color_trials;
      ++meter_.palette_probes;
      if (state_.is_redundant(clique, chi)) continue;
      Vertex holder = kNoVertex;
      bool ok = true;
      for (Vertex w : state_.color_class(chi)) {
        ++meter_.class_scans;
        if (w == u || w == v) continue;
        if (d_.part(w) == clique) {
          if (state_.matched(w) != kNoVertex) {
            ok = false;
            break;
          }
          holder = w;
        } else if (g_.has_edge(w, u) || g_.has_edge(w, v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (holder == kNoVertex) {
        color(u, chi);
        color(v, chi);
        return;
      }
      color(holder, kNoColor);
      color(u, chi);
      color(v, chi);
      StealScope scope(*this);
      recolor_dense(holder);
      return;
    }
    throw PhaseRestart("RecolorMatching(" + std::to_string(u) + "," + std::to_string(v) + ") exhausted " +
                       std::to_string(caps_.matching) + " trials");
  }

  /// Samples anti-edges of F_D until both endpoints are unmatched, then
  /// same-colors them.
  void add_anti_edge_matching(std::uint32_t clique) {
    const auto& anti_edges = d_.clique(clique).anti_edges;
    if (anti_edges.empty()) throw PhaseRestart("AddAntiEdgeMatching on a clique without anti-edges");
    for (std::uint64_t trial = 0; trial < caps_.matching; ++trial) {
      ++meter_.anti_edge_samples;
      const auto [a, b] = Clique::unpack(anti_edges.sample(rng_));
      if (state_.matched(a) == kNoVertex && state_.matched(b) == kNoVertex) {
        recolor_matching(a, b);
        return;
      }
    }
    throw PhaseRestart("AddAntiEdgeMatching exhausted " + std::to_string(caps_.matching) + " samples");
  }

  /// Smallest color of [Δ+1] \ φ(N(v)) by one neighborhood scan.
  void naive_recolor(Vertex v) {
    std::vector<char> used(static_cast<std::size_t>(state_.palette_size()) + 1, 0);
    for (Vertex u : g_.neighbors(v)) {
      ++meter_.class_scans;
      used[state_.color(u)] = 1;
    }
    for (Color c = 1; c <= state_.palette_size(); ++c) {
      ++meter_.palette_probes;
      if (!used[c]) {
        color(v, c);
        return;
      }
    }
    throw std::logic_error("naive_recolor: degree above the cap");
  }

  std::uint32_t sparse_recolors() const { return sparse_recolors_; }
  std::uint32_t max_steal_depth() const { return max_depth_; }
  std::uint64_t sparse_trials() const { return sparse_trials_; }
  const RetryCaps& caps() const { return caps_; }

 private:
  struct StealScope {
    explicit StealScope(Recolorer& r) : r_(r) { r_.max_depth_ = std::max(r_.max_depth_, ++r_.depth_); }
    ~StealScope() { --r_.depth_; }
    StealScope(const StealScope&) = delete;
    StealScope& operator=(const StealScope&) = delete;
    Recolorer& r_;
  };

  const DynamicGraph& g_;
  const Decomposition& d_;
  ColoringState& state_;
  Rng& rng_;
  CostMeter& meter_;
  RetryCaps caps_;
  std::uint32_t sparse_recolors_ = 0;
  std::uint32_t depth_ = 0;
  std::uint32_t max_depth_ = 0;
  std::uint64_t sparse_trials_ = 0;
};

}  // namespace dyncolor
