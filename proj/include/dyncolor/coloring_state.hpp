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
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dyncolor/decomposition.hpp"
#include "dyncolor/graph.hpp"
#include "dyncolor/sample_set.hpp"
#include "dyncolor/types.hpp"

namespace dyncolor {

/// The coloring φ together with its indexed views: global color classes
/// Φ[χ], per-clique classes Φ_D[χ], clique palettes L(D), the matched-pair
/// array and |M_D|. Every view is updated in O(log n) by set_color().
///
/// The redundant set M_D is derived: χ ∈ M_D iff |Φ_D[χ]| ≥ 2.
/// Propriety is not enforced here.
class ColoringState {
 public:
  ColoringState() = default;
  ColoringState(Vertex n, std::uint32_t delta)
      : delta_(delta),
        phi_(static_cast<std::size_t>(n) + 1, kNoColor),
        matched_(static_cast<std::size_t>(n) + 1, kNoVertex),
        part_(static_cast<std::size_t>(n) + 1, kSparsePart),
        classes_(static_cast<std::size_t>(delta) + 2) {}

  /// Adopts the clique labels of `d` and rebuilds the clique views from φ.
  void bind(const Decomposition& d) {
    for (Vertex v = 1; v < part_.size(); ++v) part_[v] = d.part(v);
    cliques_.assign(d.clique_count(), CliqueView{});
    for (std::size_t i = 0; i < cliques_.size(); ++i) {
      CliqueView& view = cliques_[i];
      view.classes.assign(static_cast<std::size_t>(delta_) + 2, {});
      for (Color c = 1; c <= palette_size(); ++c) view.palette.insert(c);
      view.size = d.clique(i).members.size();
    }
    for (Vertex v = 1; v < phi_.size(); ++v) {
      if (phi_[v] != kNoColor && part_[v] != kSparsePart) add_to_clique(v, phi_[v]);
    }
  }

  Vertex n() const { return static_cast<Vertex>(phi_.size() - 1); }
  std::uint32_t delta() const { return delta_; }
  std::uint32_t palette_size() const { return delta_ + 1; }

  Color color(Vertex v) const { return phi_[v]; }
  bool colored(Vertex v) const { return phi_[v] != kNoColor; }
  const std::vector<Color>& colors() const { return phi_; }

  const std::set<Vertex>& color_class(Color c) const { return classes_[c]; }
  const std::vector<Vertex>& clique_class(std::size_t clique, Color c) const { return cliques_[clique].classes[c]; }
  const OrderedSampleSet<Color>& clique_palette(std::size_t clique) const { return cliques_[clique].palette; }
  std::size_t clique_count() const { return cliques_.size(); }
  std::uint32_t part(Vertex v) const { return part_[v]; }

  /// |M_D|.
  std::size_t redundant_count(std::size_t clique) const { return cliques_[clique].redundant; }
  bool is_redundant(std::size_t clique, Color c) const { return cliques_[clique].classes[c].size() >= 2; }
  std::vector<Color> redundant_colors(std::size_t clique) const {
    std::vector<Color> out;
    for (Color c = 1; c <= palette_size(); ++c) {
      if (is_redundant(clique, c)) out.push_back(c);
    }
    return out;
  }
  std::size_t uncolored_in_clique(std::size_t clique) const {
    return cliques_[clique].size - cliques_[clique].colored;
  }

  Vertex matched(Vertex v) const { return matched_[v]; }
  const std::vector<Vertex>& matched_array() const { return matched_; }
  void match(Vertex u, Vertex v) {
    matched_[u] = v;
    matched_[v] = u;
  }
  /// Clears v and its partner.
  void unmatch(Vertex v) {
    const Vertex w = matched_[v];
    matched_[v] = kNoVertex;
    if (w != kNoVertex && matched_[w] == v) matched_[w] = kNoVertex;
  }
  void clear_matching() { std::fill(matched_.begin(), matched_.end(), kNoVertex); }
  /// Raw write for corruption tests; does not keep the involution.
  void set_matched_raw(Vertex v, Vertex partner) { matched_[v] = partner; }

  /// Sets φ(v) = c (kNoColor uncolors) and updates every view.
  void set_color(Vertex v, Color c) {
    if (c > palette_size()) {
      throw ColorOutOfRange("color " + std::to_string(c) + " outside [1," + std::to_string(palette_size()) + "]");
    }
    const Color old = phi_[v];
    if (old == c) return;
    if (old != kNoColor) {
      classes_[old].erase(v);
      if (part_[v] != kSparsePart) remove_from_clique(v, old);
    }
    phi_[v] = c;
    if (c != kNoColor) {
      classes_[c].insert(v);
      if (part_[v] != kSparsePart) add_to_clique(v, c);
    }
  }

  std::size_t uncolored_count() const {
    return static_cast<std::size_t>(std::count(phi_.begin() + 1, phi_.end(), kNoColor));
  }

  friend bool operator==(const ColoringState&, const ColoringState&) = default;

 private:
  struct CliqueView {
    std::vector<std::vector<Vertex>> classes;  // Φ_D[χ], ascending
    OrderedSampleSet<Color> palette;           // L(D)
    std::size_t redundant = 0;
    std::size_t colored = 0;
    std::size_t size = 0;
    friend bool operator==(const CliqueView&, const CliqueView&) = default;
  };

  void add_to_clique(Vertex v, Color c) {
    CliqueView& view = cliques_[part_[v]];
    auto& cls = view.classes[c];
    cls.insert(std::lower_bound(cls.begin(), cls.end(), v), v);
    if (cls.size() == 1) view.palette.erase(c);
    if (cls.size() == 2) ++view.redundant;
    ++view.colored;
  }

  void remove_from_clique(Vertex v, Color c) {
    CliqueView& view = cliques_[part_[v]];
    auto& cls = view.classes[c];
    cls.erase(std::lower_bound(cls.begin(), cls.end(), v));
    if (cls.size() == 1) --view.redundant;
    if (cls.empty()) view.palette.insert(c);
    --view.colored;
  }

  std::uint32_t delta_ = 0;
  std::vector<Color> phi_;
  std::vector<Vertex> matched_;
  std::vector<std::uint32_t> part_;
  std::vector<std::set<Vertex>> classes_;
  std::vector<CliqueView> cliques_;
};

/// L_S(v) = [Δ+1] \ φ(N_S(v)), ascending.
inline std::vector<Color> sparse_palette(const ColoringState& state, const DynamicGraph& g, const Decomposition& d,
                                         Vertex v) {
  std::vector<char> used(static_cast<std::size_t>(state.palette_size()) + 1, 0);
  for (Vertex u : g.neighbors(v)) {
    if (d.is_sparse(u)) used[state.color(u)] = 1;
  }
  std::vector<Color> out;
  for (Color c = 1; c <= state.palette_size(); ++c) {
    if (!used[c]) out.push_back(c);
  }
  return out;
}

/// Δ − deg(v) + |M_D| − a_v + #uncolored(D ∪ E(v)) for a denser v. The
/// number of colors of L(D) available to v is at least this.
inline std::int64_t accounting_lower_bound(const ColoringState& state, const DynamicGraph& g, const Decomposition& d,
                                           Vertex v) {
  const std::uint32_t clique = d.part(v);
  std::int64_t uncolored = static_cast<std::int64_t>(state.uncolored_in_clique(clique));
  for (Vertex w : d.external(v)) uncolored += state.colored(w) ? 0 : 1;
  return static_cast<std::int64_t>(g.delta()) - static_cast<std::int64_t>(g.degree(v)) +
         static_cast<std::int64_t>(state.redundant_count(clique)) - d.anti_degree(v) + uncolored;
}

}  // namespace dyncolor
