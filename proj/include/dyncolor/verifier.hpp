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
#include <set>
#include <string>
#include <vector>

#include "dyncolor/coloring_state.hpp"
#include "dyncolor/decomposition.hpp"
#include "dyncolor/graph.hpp"

namespace dyncolor {

// Brute-force oracles and invariant sweeps. Nothing here reads the
// incremental views it is meant to check unless it is comparing against
// them: counts are recomputed from the graph and φ.

enum class ViolationKind {
  propriety,
  dense_balance,
  matching,
  matched_symmetry,
  accounting,
  view_consistency,
  balance,
  fresh_slack,
};

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::propriety: return "propriety";
    case ViolationKind::dense_balance: return "dense-balance";
    case ViolationKind::matching: return "matching";
    case ViolationKind::matched_symmetry: return "matched-symmetry";
    case ViolationKind::accounting: return "accounting";
    case ViolationKind::view_consistency: return "view-consistency";
    case ViolationKind::balance: return "balance";
    case ViolationKind::fresh_slack: return "fresh-slack";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::vector<std::uint64_t> location;
  std::string details;
};

using ViolationReport = std::vector<Violation>;

inline std::size_t count_kind(const ViolationReport& report, ViolationKind kind) {
  return static_cast<std::size_t>(
      std::count_if(report.begin(), report.end(), [kind](const Violation& v) { return v.kind == kind; }));
}

inline void append(ViolationReport& into, ViolationReport more) {
  into.insert(into.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

/// Every uncolored vertex and every monochromatic or uncolored-endpoint edge.
inline ViolationReport check_proper(const DynamicGraph& g, const ColoringState& state) {
  ViolationReport out;
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (!state.colored(v)) out.push_back({ViolationKind::propriety, {v}, "uncolored vertex"});
  }
  for (const auto& [u, v] : g.edges()) {
    if (!state.colored(u) || !state.colored(v)) {
      out.push_back({ViolationKind::propriety, {u, v}, "edge with an uncolored endpoint"});
    } else if (state.color(u) == state.color(v)) {
      out.push_back({ViolationKind::propriety, {u, v}, "monochromatic edge, color " + std::to_string(state.color(u))});
    }
  }
  return out;
}

namespace oracle {

inline bool adjacent_by_scan(const DynamicGraph& g, Vertex a, Vertex b) {
  const auto nbrs = g.neighbors(a);
  return std::find(nbrs.begin(), nbrs.end(), b) != nbrs.end();
}

/// m_v by enumerating all neighbor pairs and scanning adjacency lists.
inline std::uint64_t neighborhood_edges(const DynamicGraph& g, Vertex v) {
  const auto nbrs = g.neighbors(v);
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      if (adjacent_by_scan(g, nbrs[i], nbrs[j])) ++m;
    }
  }
  return m;
}

inline std::vector<Vertex> members_of(const Decomposition& d, std::uint32_t clique) {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= d.n(); ++v) {
    if (d.part(v) == clique) out.push_back(v);
  }
  return out;
}

/// L(D) from φ.
inline std::vector<Color> clique_palette(const ColoringState& state, const Decomposition& d, std::uint32_t clique) {
  std::vector<char> used(static_cast<std::size_t>(state.palette_size()) + 1, 0);
  for (Vertex v : members_of(d, clique)) used[state.color(v)] = 1;
  std::vector<Color> out;
  for (Color c = 1; c <= state.palette_size(); ++c) {
    if (!used[c]) out.push_back(c);
  }
  return out;
}

/// L(v) from φ and the graph.
inline std::vector<Color> palette(const ColoringState& state, const DynamicGraph& g, Vertex v) {
  std::vector<char> used(static_cast<std::size_t>(state.palette_size()) + 1, 0);
  for (Vertex u : g.neighbors(v)) used[state.color(u)] = 1;
  std::vector<Color> out;
  for (Color c = 1; c <= state.palette_size(); ++c) {
    if (!used[c]) out.push_back(c);
  }
  return out;
}

/// |L(D) ∩ L(v)|.
inline std::size_t clique_palette_available(const ColoringState& state, const DynamicGraph& g, const Decomposition& d,
                                            Vertex v) {
  const auto ld = clique_palette(state, d, d.part(v));
  const auto lv = palette(state, g, v);
  std::vector<Color> both;
  std::set_intersection(ld.begin(), ld.end(), lv.begin(), lv.end(), std::back_inserter(both));
  return both.size();
}

/// Colors used at least twice inside the clique.
inline std::vector<Color> repeated_colors(const ColoringState& state, const Decomposition& d, std::uint32_t clique) {
  std::vector<std::size_t> count(static_cast<std::size_t>(state.palette_size()) + 1, 0);
  for (Vertex v : members_of(d, clique)) {
    if (state.colored(v)) ++count[state.color(v)];
  }
  std::vector<Color> out;
  for (Color c = 1; c <= state.palette_size(); ++c) {
    if (count[c] >= 2) out.push_back(c);
  }
  return out;
}

/// (a_v, e_v) from the graph alone.
inline std::pair<std::int64_t, std::int64_t> anti_and_external(const DynamicGraph& g, const Decomposition& d, Vertex v) {
  std::int64_t inner = 0;
  std::int64_t size = 0;
  for (Vertex w = 1; w <= g.n(); ++w) {
    if (d.part(w) != d.part(v)) continue;
    ++size;
    if (w != v && adjacent_by_scan(g, v, w)) ++inner;
  }
  return {size - 1 - inner, static_cast<std::int64_t>(g.degree(v)) - inner};
}

/// Δ − deg(v) + |M_D| − a_v + #uncolored(D ∪ E(v)), all recomputed.
inline std::int64_t accounting_bound(const ColoringState& state, const DynamicGraph& g, const Decomposition& d,
                                     Vertex v) {
  const std::uint32_t clique = d.part(v);
  std::int64_t uncolored = 0;
  for (Vertex w : members_of(d, clique)) uncolored += state.colored(w) ? 0 : 1;
  for (Vertex w : g.neighbors(v)) {
    if (d.part(w) != clique && !state.colored(w)) ++uncolored;
  }
  const auto [anti, ext] = anti_and_external(g, d, v);
  (void)ext;
  return static_cast<std::int64_t>(g.delta()) - static_cast<std::int64_t>(g.degree(v)) +
         static_cast<std::int64_t>(repeated_colors(state, d, clique).size()) - anti + uncolored;
}

}  // namespace oracle

/// ζ*(v) by the triple loop over N(v).
inline Rational brute_force_sparsity(const DynamicGraph& g, Vertex v) {
  return sparsity_from_count(g.delta(), oracle::neighborhood_edges(g, v));
}

enum class InvariantScope : unsigned {
  dense_balance = 1,
  matching = 2,
  matched = 4,
  accounting = 8,
  views = 16,
  all = 31,
};

/// Dense Balance, the Matching Invariant, matched-pair consistency, the
/// accounting inequality for every denser vertex, and agreement of every
/// incremental view with a recomputation from the graph and φ. O(n·Δ).
inline ViolationReport check_invariants(const DynamicGraph& g, const Decomposition& d, const ColoringState& state,
                                        const Config& cfg, InvariantScope scope = InvariantScope::all) {
  ViolationReport out;
  auto in = [scope](InvariantScope s) { return (static_cast<unsigned>(scope) & static_cast<unsigned>(s)) != 0; };
  auto flag = [&out](ViolationKind k, std::vector<std::uint64_t> loc, std::string msg) {
    out.push_back({k, std::move(loc), std::move(msg)});
  };
  const Vertex n = g.n();
  const std::uint32_t palette = state.palette_size();

  std::vector<std::vector<Vertex>> members(d.clique_count());
  for (Vertex v = 1; v <= n; ++v) {
    if (!d.is_sparse(v) && d.part(v) < members.size()) members[d.part(v)].push_back(v);
  }

  std::vector<char> used_d(static_cast<std::size_t>(palette) + 1);
  std::vector<char> used_v(static_cast<std::size_t>(palette) + 1);
  for (std::uint32_t i = 0; i < d.clique_count(); ++i) {
    const auto& mem = members[i];
    std::vector<std::vector<Vertex>> holders(static_cast<std::size_t>(palette) + 1);
    std::vector<std::int64_t> anti(mem.size());
    std::vector<std::int64_t> ext(mem.size());
    std::int64_t anti_sum = 0;
    std::int64_t ext_sum = 0;
    std::int64_t uncolored = 0;
    for (std::size_t k = 0; k < mem.size(); ++k) {
      const Vertex v = mem[k];
      if (state.colored(v)) {
        holders[state.color(v)].push_back(v);
      } else {
        ++uncolored;
      }
      std::int64_t inner = 0;
      for (Vertex w : g.neighbors(v)) inner += d.part(w) == i ? 1 : 0;
      anti[k] = static_cast<std::int64_t>(mem.size()) - 1 - inner;
      ext[k] = static_cast<std::int64_t>(g.degree(v)) - inner;
      anti_sum += anti[k];
      ext_sum += ext[k];
    }
    std::int64_t repeated = 0;
    for (Color c = 1; c <= palette; ++c) {
      const auto& h = holders[c];
      used_d[c] = h.empty() ? 0 : 1;
      if (h.size() >= 2) ++repeated;
      if (in(InvariantScope::dense_balance) && h.size() > 2) {
        flag(ViolationKind::dense_balance, {i, c}, std::to_string(h.size()) + " holders in one clique");
      }
      if (in(InvariantScope::matching) && h.size() == 2 && state.matched(h[0]) != h[1]) {
        flag(ViolationKind::matching, {i, c}, "repeated color not carried by a matched pair");
      }
    }
    if (in(InvariantScope::matching)) {
      const std::int64_t target = mem.empty() ? 0 : (8 * anti_sum) / static_cast<std::int64_t>(mem.size());
      if (repeated < target) {
        flag(ViolationKind::matching, {i},
             "|M_D| = " + std::to_string(repeated) + " < floor(8 a_D) = " + std::to_string(target));
      }
      if (static_cast<double>(repeated) > 24.0 * cfg.epsilon * g.delta() + 1e-9) {
        flag(ViolationKind::matching, {i}, "|M_D| above 24 eps Delta");
      }
    }
    if (in(InvariantScope::accounting)) {
      for (std::size_t k = 0; k < mem.size(); ++k) {
        const Vertex v = mem[k];
        std::fill(used_v.begin(), used_v.end(), 0);
        std::int64_t around = uncolored;
        for (Vertex w : g.neighbors(v)) {
          used_v[state.color(w)] = 1;
          if (d.part(w) != i && !state.colored(w)) ++around;
        }
        std::int64_t available = 0;
        for (Color c = 1; c <= palette; ++c) available += (!used_d[c] && !used_v[c]) ? 1 : 0;
        const std::int64_t bound = static_cast<std::int64_t>(g.delta()) - static_cast<std::int64_t>(g.degree(v)) +
                                   repeated - anti[k] + around;
        if (available < bound) {
          flag(ViolationKind::accounting, {v},
               "|L(D) cap L(v)| = " + std::to_string(available) + " < " + std::to_string(bound));
        }
      }
    }
    if (in(InvariantScope::views)) {
      if (i >= state.clique_count()) {
        flag(ViolationKind::view_consistency, {i}, "coloring state has no view for this clique");
        continue;
      }
      const Clique& c = d.clique(i);
      if (c.members != mem) flag(ViolationKind::view_consistency, {i}, "member list differs from part labels");
      if (c.anti_sum != anti_sum || c.ext_sum != ext_sum) {
        flag(ViolationKind::view_consistency, {i}, "a_D or e_D sums differ from recount");
      }
      if (static_cast<std::int64_t>(c.anti_edges.size()) * 2 != anti_sum) {
        flag(ViolationKind::view_consistency, {i}, "|F_D| inconsistent with a_D");
      }
      for (std::uint64_t key : c.anti_edges) {
        const auto [a, b] = Clique::unpack(key);
        if (d.part(a) != i || d.part(b) != i || a == b || g.has_edge(a, b)) {
          flag(ViolationKind::view_consistency, {a, b}, "F_D holds a pair that is not an anti-edge");
        }
      }
      for (std::size_t k = 0; k < mem.size(); ++k) {
        const Vertex v = mem[k];
        if (d.anti_degree(v) != anti[k] || d.ext_degree(v) != ext[k]) {
          flag(ViolationKind::view_consistency, {v}, "E(v) or A(v) size differs from recount");
          continue;
        }
        for (Vertex w : d.external(v)) {
          if (d.part(w) == i || !g.has_edge(v, w)) flag(ViolationKind::view_consistency, {v, w}, "bad E(v) entry");
        }
        for (Vertex w : d.anti(v)) {
          if (d.part(w) != i || w == v || g.has_edge(v, w)) {
            flag(ViolationKind::view_consistency, {v, w}, "bad A(v) entry");
          }
        }
      }
      std::size_t free_colors = 0;
      for (Color col = 1; col <= palette; ++col) {
        if (state.clique_class(i, col) != holders[col]) {
          flag(ViolationKind::view_consistency, {i, col}, "clique color class differs from recount");
        }
        const bool free = holders[col].empty();
        free_colors += free ? 1 : 0;
        if (state.clique_palette(i).contains(col) != free) {
          flag(ViolationKind::view_consistency, {i, col}, "clique palette differs from recount");
        }
      }
      if (state.clique_palette(i).size() != free_colors ||
          static_cast<std::int64_t>(state.redundant_count(i)) != repeated ||
          static_cast<std::int64_t>(state.uncolored_in_clique(i)) != uncolored) {
        flag(ViolationKind::view_consistency, {i}, "clique counters differ from recount");
      }
    }
  }

  if (in(InvariantScope::matched)) {
    for (Vertex v = 1; v <= n; ++v) {
      const Vertex w = state.matched(v);
      if (w == kNoVertex) continue;
      if (!g.valid_vertex(w) || w == v || state.matched(w) != v) {
        flag(ViolationKind::matched_symmetry, {v, w}, "matched is not an involution");
      } else if (!d.same_clique(v, w)) {
        flag(ViolationKind::matched_symmetry, {v, w}, "matched pair spans cliques");
      } else if (g.has_edge(v, w)) {
        flag(ViolationKind::matched_symmetry, {v, w}, "matched pair is adjacent");
      } else if (state.colored(v) && state.colored(w) && state.color(v) != state.color(w)) {
        flag(ViolationKind::matched_symmetry, {v, w}, "matched pair colored differently");
      }
    }
  }

  if (in(InvariantScope::views)) {
    if (state.clique_count() != d.clique_count()) {
      flag(ViolationKind::view_consistency, {}, "clique count differs between state and decomposition");
    }
    std::size_t classified = 0;
    for (Color c = 1; c <= palette; ++c) {
      for (Vertex v : state.color_class(c)) {
        ++classified;
        if (state.color(v) != c) flag(ViolationKind::view_consistency, {v, c}, "color class holds a stray vertex");
      }
    }
    if (classified != n - state.uncolored_count()) {
      flag(ViolationKind::view_consistency, {}, "color classes do not partition the colored vertices");
    }
    for (Vertex v = 1; v <= n; ++v) {
      if (state.part(v) != d.part(v)) flag(ViolationKind::view_consistency, {v}, "stale part label in state");
      if (d.is_sparse(v) && (!d.external(v).empty() || !d.anti(v).empty())) {
        flag(ViolationKind::view_consistency, {v}, "sparser vertex carries E/A sets");
      }
    }
  }
  return out;
}

/// Color classes whose sparser part exceeds C_bal·(n/ζ + elapsed/ζ + log₂ n),
/// and any clique holding a color more than twice.
inline ViolationReport check_balance(const ColoringState& state, const Decomposition& d, const Config& cfg,
                                     std::uint64_t phase_elapsed) {
  ViolationReport out;
  const double n = state.n();
  const double bound =
      cfg.c_bal * (n / cfg.zeta + static_cast<double>(phase_elapsed) / cfg.zeta + std::log2(std::max(n, 2.0)));
  for (Color c = 1; c <= state.palette_size(); ++c) {
    std::size_t sparse = 0;
    std::vector<std::size_t> per_clique(d.clique_count(), 0);
    for (Vertex v : state.color_class(c)) {
      if (d.is_sparse(v)) {
        ++sparse;
      } else if (++per_clique[d.part(v)] == 3) {
        out.push_back({ViolationKind::balance, {c, d.part(v)}, "clique contributes more than two"});
      }
    }
    if (static_cast<double>(sparse) > bound) {
      out.push_back({ViolationKind::balance, {c}, "sparser class size " + std::to_string(sparse)});
    }
  }
  return out;
}

}  // namespace dyncolor
