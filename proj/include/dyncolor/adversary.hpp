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
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dyncolor/decomposition.hpp"
#include "dyncolor/engine.hpp"
#include "dyncolor/graph.hpp"
#include "dyncolor/rng.hpp"
#include "dyncolor/update.hpp"

namespace dyncolor {

enum class GraphFamily { random, planted, mixed, bipartite };

inline const char* to_string(GraphFamily f) {
  switch (f) {
    case GraphFamily::random: return "random";
    case GraphFamily::planted: return "planted";
    case GraphFamily::mixed: return "mixed";
    case GraphFamily::bipartite: return "bipartite";
  }
  return "?";
}

inline GraphFamily parse_family(const std::string& s) {
  if (s == "random" || s == "random-sparse") return GraphFamily::random;
  if (s == "planted" || s == "planted-clique") return GraphFamily::planted;
  if (s == "mixed") return GraphFamily::mixed;
  if (s == "bipartite") return GraphFamily::bipartite;
  throw std::invalid_argument("unknown graph family '" + s + "'");
}

/// A generated graph together with the cliques it was planted with.
struct GeneratedGraph {
  DynamicGraph graph;
  std::vector<std::vector<Vertex>> planted;
};

namespace detail {

inline bool try_add(DynamicGraph& g, Vertex u, Vertex v) {
  if (u == v || g.has_edge(u, v) || g.degree(u) >= g.delta() || g.degree(v) >= g.delta()) return false;
  g.insert_edge(u, v);
  return true;
}

// Random edges among `pool` until `target` edges were added or attempts run out.
inline void add_random_edges(DynamicGraph& g, const std::vector<Vertex>& pool, std::uint64_t target, Rng& rng) {
  if (pool.size() < 2) return;
  std::uint64_t added = 0;
  for (std::uint64_t attempt = 0; added < target && attempt < 8 * target + 64; ++attempt) {
    const Vertex u = pool[rng.below(pool.size())];
    const Vertex v = pool[rng.below(pool.size())];
    if (try_add(g, u, v)) ++added;
  }
}

// One almost-clique on `members`: complete, minus a few anti-edge hubs of
// anti-degree 3 and a sparse anti-matching.
inline void plant_clique(DynamicGraph& g, std::vector<Vertex> members, Rng& rng) {
  rng.shuffle(members);
  const std::size_t k = members.size();
  std::vector<std::vector<char>> keep(k, std::vector<char>(k, 1));
  std::size_t next = 0;
  const std::size_t hubs = std::max<std::size_t>(1, k / 32);
  for (std::size_t h = 0; h < hubs && next + 4 <= k; ++h) {
    const std::size_t hub = next++;
    for (int j = 0; j < 3; ++j) {
      const std::size_t x = next++;
      keep[hub][x] = keep[x][hub] = 0;
    }
  }
  for (std::size_t p = 0; p < k / 16 && next + 2 <= k; ++p) {
    const std::size_t a = next++;
    const std::size_t b = next++;
    keep[a][b] = keep[b][a] = 0;
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (keep[i][j]) g.insert_edge(members[i], members[j]);
    }
  }
}

}  // namespace detail

/// Clique size used by the planted families: large enough that every member
/// keeps (1−ε)Δ inner neighbors at ε = 1/8 with anti-degree up to 3. Capped
/// at Δ+1, which for Δ < 24 loses that guarantee.
inline std::uint32_t planted_clique_size(std::uint32_t delta) {
  return std::min(static_cast<std::uint32_t>(std::ceil(7.0 * delta / 8.0)) + 4, delta + 1);
}

/// random: ≈ density·n·Δ/2 uniform edges. planted: almost-cliques on about
/// three quarters of the vertices plus random background and a few external
/// edges per clique vertex. mixed: two almost-cliques in a random
/// background. bipartite: uniform edges across a balanced bipartition.
inline GeneratedGraph generate_graph(GraphFamily family, Vertex n, std::uint32_t delta, double density, Rng& rng) {
  GeneratedGraph out{DynamicGraph(n, delta), {}};
  DynamicGraph& g = out.graph;
  std::vector<Vertex> all(n);
  for (Vertex v = 1; v <= n; ++v) all[v - 1] = v;

  if (family == GraphFamily::bipartite) {
    const std::uint64_t target = static_cast<std::uint64_t>(density * n * delta / 2.0);
    std::uint64_t added = 0;
    const Vertex half = n / 2;
    for (std::uint64_t attempt = 0; added < target && half > 0 && attempt < 8 * target + 64; ++attempt) {
      const auto u = static_cast<Vertex>(1 + rng.below(half));
      const auto v = static_cast<Vertex>(half + 1 + rng.below(n - half));
      if (detail::try_add(g, u, v)) ++added;
    }
    return out;
  }
  if (family == GraphFamily::random) {
    detail::add_random_edges(g, all, static_cast<std::uint64_t>(density * n * delta / 2.0), rng);
    return out;
  }

  const std::uint32_t k = planted_clique_size(delta);
  std::size_t count = 0;
  if (k >= 8 && k <= n) count = family == GraphFamily::mixed ? std::min<std::size_t>(2, n / k) : (3 * n / 4) / k;
  std::vector<Vertex> order = all;
  rng.shuffle(order);
  std::vector<char> in_clique(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t c = 0; c < count; ++c) {
    std::vector<Vertex> members(order.begin() + static_cast<std::ptrdiff_t>(c * k),
                                order.begin() + static_cast<std::ptrdiff_t>((c + 1) * k));
    for (Vertex v : members) in_clique[v] = 1;
    detail::plant_clique(g, members, rng);
    std::sort(members.begin(), members.end());
    out.planted.push_back(std::move(members));
  }
  std::vector<Vertex> background;
  for (Vertex v = 1; v <= n; ++v) {
    if (!in_clique[v]) background.push_back(v);
  }
  detail::add_random_edges(g, background, static_cast<std::uint64_t>(density * background.size() * delta / 4.0),
                           rng);
  // External edges: mostly one per clique vertex, a few vertices fill up.
  for (const auto& members : out.planted) {
    for (Vertex v : members) {
      const std::uint32_t spare = delta - g.degree(v);
      const std::uint32_t want = rng.bernoulli(1, 8) ? spare : std::min<std::uint32_t>(spare, 1);
      for (std::uint32_t e = 0, attempt = 0; e < want && attempt < 16 * want; ++attempt) {
        const Vertex w = order[rng.below(order.size())];
        if (std::binary_search(members.begin(), members.end(), w)) continue;
        if (detail::try_add(g, v, w)) ++e;
      }
    }
  }
  return out;
}

/// Live edge set with O(1) uniform sampling and removal.
class EdgePool {
 public:
  bool contains(Vertex u, Vertex v) const { return index_.count(key(u, v)) != 0; }
  std::size_t size() const { return edges_.size(); }
  void insert(Vertex u, Vertex v) {
    index_.emplace(key(u, v), edges_.size());
    edges_.push_back(key(u, v));
  }
  void erase(Vertex u, Vertex v) {
    const auto it = index_.find(key(u, v));
    const std::size_t at = it->second;
    index_.erase(it);
    if (at + 1 != edges_.size()) {
      edges_[at] = edges_.back();
      index_[edges_[at]] = at;
    }
    edges_.pop_back();
  }
  std::pair<Vertex, Vertex> sample(Rng& rng) const { return Clique::unpack(edges_[rng.below(edges_.size())]); }

 private:
  static std::uint64_t key(Vertex u, Vertex v) { return Clique::pack(u, v); }
  std::vector<std::uint64_t> edges_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// A stream fixed in advance: the edges of a `family` graph with ≈ density·n·Δ/2
/// edges, inserted in random order, then a random insert/delete walk.
/// Exactly `steps` updates, valid for (n, Δ).
inline std::vector<Update> oblivious_adversary(Vertex n, std::uint32_t delta, std::uint64_t steps, double density,
                                               std::uint64_t seed, GraphFamily family = GraphFamily::random) {
  if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("density must lie in (0, 1]");
  std::vector<Update> out;
  if (steps == 0 || n < 2) return out;
  Rng rng(seed, 0x0b11);
  GeneratedGraph target = generate_graph(family, n, delta, density, rng);
  std::vector<std::pair<Vertex, Vertex>> edges = target.graph.edges();
  rng.shuffle(edges);

  std::vector<std::uint32_t> degree(static_cast<std::size_t>(n) + 1, 0);
  EdgePool live;
  auto insert = [&](Vertex u, Vertex v) {
    live.insert(u, v);
    ++degree[u];
    ++degree[v];
    out.push_back(Update::insert(u, v));
  };
  for (const auto& [u, v] : edges) {
    if (out.size() == steps) return out;
    insert(u, v);
  }
  while (out.size() < steps) {
    if (live.size() > 0 && rng.bernoulli(1, 2)) {
      const auto [u, v] = live.sample(rng);
      live.erase(u, v);
      --degree[u];
      --degree[v];
      out.push_back(Update::remove(u, v));
      continue;
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
      const auto u = static_cast<Vertex>(1 + rng.below(n));
      const auto v = static_cast<Vertex>(1 + rng.below(n));
      if (u == v || degree[u] >= delta || degree[v] >= delta || live.contains(u, v)) continue;
      insert(u, v);
      break;
    }
  }
  return out;
}

/// A uniformly random live edge: a vertex accepted with probability deg/Δ,
/// then a uniform neighbor.
inline std::optional<Update> random_deletion(const DynamicGraph& g, Rng& rng) {
  if (g.edge_count() == 0) return std::nullopt;
  for (;;) {
    const auto u = static_cast<Vertex>(1 + rng.below(g.n()));
    if (rng.below(g.delta()) >= g.degree(u)) continue;
    const auto nbrs = g.neighbors(u);
    return Update::remove(u, nbrs[rng.below(nbrs.size())]);
  }
}

/// Connects a uniformly chosen same-colored, non-adjacent pair whose
/// endpoints both have spare degree; deletes a random edge if there is none.
inline Update conflict_adversary(const AdversaryView& view, Rng& rng) {
  const DynamicGraph& g = view.graph();
  std::vector<std::vector<Vertex>> open(view.palette_size() + 1);
  std::uint64_t pairs = 0;
  for (Color c = 1; c <= view.palette_size(); ++c) {
    for (Vertex v : view.color_class(c)) {
      if (g.degree(v) < g.delta()) open[c].push_back(v);
    }
    const auto& cls = open[c];
    for (std::size_t i = 0; i < cls.size(); ++i) {
      for (std::size_t j = i + 1; j < cls.size(); ++j) pairs += g.has_edge(cls[i], cls[j]) ? 0 : 1;
    }
  }
  if (pairs > 0) {
    std::uint64_t pick = rng.below(pairs);
    for (Color c = 1; c <= view.palette_size(); ++c) {
      const auto& cls = open[c];
      for (std::size_t i = 0; i < cls.size(); ++i) {
        for (std::size_t j = i + 1; j < cls.size(); ++j) {
          if (g.has_edge(cls[i], cls[j])) continue;
          if (pick-- == 0) return Update::insert(cls[i], cls[j]);
        }
      }
    }
  }
  if (auto del = random_deletion(g, rng)) return *del;
  // Empty graph with every color distinct: any valid insertion.
  for (;;) {
    const auto u = static_cast<Vertex>(1 + rng.below(g.n()));
    const auto v = static_cast<Vertex>(1 + rng.below(g.n()));
    if (u != v) return Update::insert(u, v);
  }
}

/// Prefers inserting the edge of a matched pair, then deleting an edge inside
/// a clique, then behaves like conflict_adversary.
inline Update matching_attacker(const AdversaryView& view, const Decomposition& decomp, Rng& rng) {
  const DynamicGraph& g = view.graph();
  std::vector<std::pair<Vertex, Vertex>> matched;
  for (Vertex v = 1; v <= g.n(); ++v) {
    const Vertex w = view.matched(v);
    if (w > v && !g.has_edge(v, w) && g.degree(v) < g.delta() && g.degree(w) < g.delta()) matched.emplace_back(v, w);
  }
  if (!matched.empty()) {
    const auto [u, v] = matched[rng.below(matched.size())];
    return Update::insert(u, v);
  }
  std::vector<std::uint32_t> cliques;
  for (std::uint32_t i = 0; i < decomp.clique_count(); ++i) {
    if (decomp.clique(i).members.size() >= 2) cliques.push_back(i);
  }
  if (!cliques.empty()) {
    const auto& members = decomp.clique(cliques[rng.below(cliques.size())]).members;
    for (int attempt = 0; attempt < 64; ++attempt) {
      const Vertex u = members[rng.below(members.size())];
      const Vertex v = members[rng.below(members.size())];
      if (u != v && g.has_edge(u, v)) return Update::remove(u, v);
    }
  }
  return conflict_adversary(view, rng);
}

}  // namespace dyncolor
