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
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dyncolor/graph.hpp"
#include "dyncolor/sample_set.hpp"
#include "dyncolor/types.hpp"

namespace dyncolor {

/// Smallest integer z with z ≥ n^{2/3}, computed exactly.
inline std::uint64_t ceil_two_thirds_power(std::uint64_t n) {
  auto z = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(n) * static_cast<double>(n)));
  if (z > 0) --z;
  const __uint128_t target = static_cast<__uint128_t>(n) * n;
  while (static_cast<__uint128_t>(z) * z * z < target) ++z;
  return z;
}

/// Tunable constants of the decomposition and the phase structure.
struct Config {
  double epsilon = 1.0 / 8;     // almost-clique density ε
  double zeta = 1.0;            // sparsity ζ
  double gamma = 1.0 / 16;      // phase length t = γζ
  double delta_const = 1.0;     // sparsity constant δ of V_sp
  double slack_coeff = 1.0 / 64;  // empirical one-shot slack coefficient
  double c_bal = 8.0;           // color-class balance constant

  /// t = max(1, ⌊γζ⌋).
  std::uint64_t phase_length() const {
    const double t = std::floor(gamma * zeta);
    return t < 1.0 ? 1 : static_cast<std::uint64_t>(t);
  }

  /// Minimum sparsity ε²δΔ required of V_sp vertices.
  double vsp_sparsity(std::uint32_t delta) const { return epsilon * epsilon * delta_const * delta; }

  /// Cliques with a_C + e_C at or above this are dissolved into S.
  double dissolve_threshold() const { return 50.0 / (delta_const * epsilon * epsilon) * zeta; }

  /// Δ ≥ ζ/(ε²δ): the decomposition-based algorithm is in its regime.
  bool decomposition_regime(std::uint32_t delta) const {
    return static_cast<double>(delta) * epsilon * epsilon * delta_const >= zeta;
  }

  /// ζ = ⌈n^{2/3}⌉; ε = 1/110 when Δ is large enough for it, else 1/8.
  static Config automatic(Vertex n, std::uint32_t delta) {
    Config cfg;
    cfg.zeta = static_cast<double>(ceil_two_thirds_power(n));
    cfg.epsilon = 1.0 / 110;
    if (!cfg.decomposition_regime(delta)) cfg.epsilon = 1.0 / 8;
    return cfg;
  }
};

inline constexpr std::uint32_t kSparsePart = 0xFFFFFFFFu;

/// One almost-clique D of the decomposition with its anti-edge set F_D and
/// the exact sums behind a_D and e_D.
struct Clique {
  std::vector<Vertex> members;                 // ascending
  OrderedSampleSet<std::uint64_t> anti_edges;  // F_D, see pack()
  std::int64_t anti_sum = 0;                   // Σ_{v∈D} a_v
  std::int64_t ext_sum = 0;                    // Σ_{v∈D} e_v

  std::int64_t size() const { return static_cast<std::int64_t>(members.size()); }
  Rational avg_anti() const { return Rational(anti_sum, std::max<std::int64_t>(size(), 1)); }
  Rational avg_ext() const { return Rational(ext_sum, std::max<std::int64_t>(size(), 1)); }

  /// ⌊8·a_D⌋, the size the colorful matching must keep.
  std::int64_t matching_target() const { return size() == 0 ? 0 : (8 * anti_sum) / size(); }

  /// e_v ≤ 8·e_D and a_v ≤ 8·a_D, compared exactly.
  bool inlier_sizes(std::int64_t anti, std::int64_t ext) const {
    return anti * size() <= 8 * anti_sum && ext * size() <= 8 * ext_sum;
  }

  static std::uint64_t pack(Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  static std::pair<Vertex, Vertex> unpack(std::uint64_t key) {
    return {static_cast<Vertex>(key >> 32), static_cast<Vertex>(key & 0xFFFFFFFFu)};
  }

  friend bool operator==(const Clique&, const Clique&) = default;
};

/// Output of the almost-clique pass, before refinement.
struct RawPartition {
  std::vector<std::vector<Vertex>> cliques;
  std::vector<Vertex> sparse;
  std::uint64_t work = 0;
};

/// Partition S, D_1..D_r with the per-vertex sets E(v), A(v). Membership is
/// fixed once built; the sets and sums follow edge updates incrementally.
class Decomposition {
 public:
  Decomposition() = default;

  /// Everything in S.
  static Decomposition all_sparse(Vertex n) {
    Decomposition d;
    d.part_.assign(static_cast<std::size_t>(n) + 1, kSparsePart);
    d.ext_.resize(static_cast<std::size_t>(n) + 1);
    d.anti_.resize(static_cast<std::size_t>(n) + 1);
    return d;
  }

  /// Builds all views for the given cliques; every other vertex goes to S.
  static Decomposition from_partition(const DynamicGraph& g, std::vector<std::vector<Vertex>> cliques) {
    Decomposition d = all_sparse(g.n());
    for (auto& members : cliques) {
      std::sort(members.begin(), members.end());
      const auto index = static_cast<std::uint32_t>(d.cliques_.size());
      for (Vertex v : members) {
        if (!g.valid_vertex(v) || d.part_[v] != kSparsePart) {
          throw std::invalid_argument("from_partition: cliques must be disjoint vertex sets");
        }
        d.part_[v] = index;
      }
      Clique c;
      c.members = std::move(members);
      d.cliques_.push_back(std::move(c));
    }
    for (std::uint32_t i = 0; i < d.cliques_.size(); ++i) d.rebuild_clique_views(g, i);
    return d;
  }

  Vertex n() const { return part_.empty() ? 0 : static_cast<Vertex>(part_.size() - 1); }

  std::uint32_t part(Vertex v) const { return part_[v]; }
  bool is_sparse(Vertex v) const { return part_[v] == kSparsePart; }
  bool same_clique(Vertex u, Vertex v) const { return part_[u] != kSparsePart && part_[u] == part_[v]; }

  std::size_t clique_count() const { return cliques_.size(); }
  const Clique& clique(std::size_t i) const { return cliques_[i]; }
  const std::vector<Clique>& cliques() const { return cliques_; }

  std::vector<Vertex> sparse_vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 1; v < part_.size(); ++v) {
      if (part_[v] == kSparsePart) out.push_back(v);
    }
    return out;
  }

  const std::set<Vertex>& external(Vertex v) const { return ext_[v]; }
  const std::set<Vertex>& anti(Vertex v) const { return anti_[v]; }
  std::int64_t ext_degree(Vertex v) const { return static_cast<std::int64_t>(ext_[v].size()); }
  std::int64_t anti_degree(Vertex v) const { return static_cast<std::int64_t>(anti_[v].size()); }

  /// Inlier status under the current a_v, e_v, a_D, e_D.
  bool is_inlier(Vertex v) const {
    if (is_sparse(v)) return false;
    return cliques_[part_[v]].inlier_sizes(anti_degree(v), ext_degree(v));
  }

  /// Cliques dissolved into S during refinement, by member set.
  const std::vector<std::vector<Vertex>>& dissolved() const { return dissolved_; }

  /// Keeps E, A, F_D and the sums current after {u,v} was inserted.
  void on_insert(Vertex u, Vertex v) {
    if (same_clique(u, v)) {
      Clique& c = cliques_[part_[u]];
      c.anti_edges.erase(Clique::pack(u, v));
      anti_[u].erase(v);
      anti_[v].erase(u);
      c.anti_sum -= 2;
      return;
    }
    if (!is_sparse(u)) {
      ext_[u].insert(v);
      cliques_[part_[u]].ext_sum += 1;
    }
    if (!is_sparse(v)) {
      ext_[v].insert(u);
      cliques_[part_[v]].ext_sum += 1;
    }
  }

  /// Keeps E, A, F_D and the sums current after {u,v} was deleted.
  void on_delete(Vertex u, Vertex v) {
    if (same_clique(u, v)) {
      Clique& c = cliques_[part_[u]];
      c.anti_edges.insert(Clique::pack(u, v));
      anti_[u].insert(v);
      anti_[v].insert(u);
      c.anti_sum += 2;
      return;
    }
    if (!is_sparse(u)) {
      ext_[u].erase(v);
      cliques_[part_[u]].ext_sum -= 1;
    }
    if (!is_sparse(v)) {
      ext_[v].erase(u);
      cliques_[part_[v]].ext_sum -= 1;
    }
  }

  // Direct access for corruption tests.
  std::set<Vertex>& mutable_external(Vertex v) { return ext_[v]; }
  std::set<Vertex>& mutable_anti(Vertex v) { return anti_[v]; }
  Clique& mutable_clique(std::size_t i) { return cliques_[i]; }

  friend bool operator==(const Decomposition& a, const Decomposition& b) {
    return a.part_ == b.part_ && a.cliques_ == b.cliques_ && a.ext_ == b.ext_ && a.anti_ == b.anti_;
  }

 private:
  friend Decomposition refine_to_sparser_denser(const RawPartition&, const DynamicGraph&, const Config&);

  void rebuild_clique_views(const DynamicGraph& g, std::uint32_t index) {
    Clique& c = cliques_[index];
    c.anti_edges.clear();
    c.anti_sum = 0;
    c.ext_sum = 0;
    for (Vertex v : c.members) {
      ext_[v].clear();
      anti_[v].clear();
      for (Vertex w : g.neighbors(v)) {
        if (part_[w] != index) ext_[v].insert(w);
      }
      for (Vertex w : c.members) {
        if (w != v && !g.has_edge(v, w)) {
          anti_[v].insert(w);
          if (v < w) c.anti_edges.insert(Clique::pack(v, w));
        }
      }
      c.anti_sum += anti_degree(v);
      c.ext_sum += ext_degree(v);
    }
  }

  std::vector<std::uint32_t> part_;
  std::vector<Clique> cliques_;
  std::vector<std::set<Vertex>> ext_;
  std::vector<std::set<Vertex>> anti_;
  std::vector<std::vector<Vertex>> dissolved_;
};

/// Number of edges inside G[N(v)] for every vertex, by one pass over the
/// edges: m_v = ½ Σ_{u∈N(v)} |N(u) ∩ N(v)|.
struct NeighborhoodEdgeCounts {
  std::vector<std::uint64_t> counts;  // indexed by vertex
  std::vector<std::pair<std::pair<Vertex, Vertex>, std::uint32_t>> codegrees;  // per edge u<v
  std::uint64_t work = 0;
};

inline NeighborhoodEdgeCounts neighborhood_edge_counts(const DynamicGraph& g) {
  NeighborhoodEdgeCounts out;
  out.counts.assign(static_cast<std::size_t>(g.n()) + 1, 0);
  out.codegrees.reserve(g.edge_count());
  for (Vertex u = 1; u <= g.n(); ++u) {
    for (Vertex v : g.neighbors(u)) {
      if (v < u) continue;
      const std::uint32_t c = g.common_neighbors(u, v);
      out.counts[u] += c;
      out.counts[v] += c;
      out.codegrees.push_back({{u, v}, c});
      out.work += g.row_words();
    }
  }
  for (auto& m : out.counts) m /= 2;
  return out;
}

/// ζ*(v) = (C(Δ,2) − m_v)/Δ given m_v.
inline Rational sparsity_from_count(std::uint32_t delta, std::uint64_t m_v) {
  if (delta == 0) return Rational(0);
  const auto d = static_cast<std::int64_t>(delta);
  return Rational(d * (d - 1) - 2 * static_cast<std::int64_t>(m_v), 2 * d);
}

/// Sparsity ζ*(v); v is ζ-sparse iff ζ ≤ ζ*(v).
inline Rational sparsity(const DynamicGraph& g, Vertex v) {
  std::uint64_t twice = 0;
  for (Vertex u : g.neighbors(v)) twice += g.common_neighbors(u, v);
  return sparsity_from_count(g.delta(), twice / 2);
}

inline bool rational_at_least(const Rational& value, double threshold) {
  return static_cast<long double>(value.num()) >= static_cast<long double>(threshold) * value.den();
}

enum class AcdPolicy {
  strict,   // unhoused vertices that are not ε²δΔ-sparse raise DecompositionFailed
  lenient,  // they are put in V_sp anyway
};

/// Almost-clique decomposition by similarity clustering.
///
/// Adjacent u, v are friends when |N(u) ∩ N(v)| ≥ (1−2ε)Δ. Friendship
/// components of size ≥ (1−ε)Δ are candidates; each is peeled of members
/// with fewer than (1−ε)Δ neighbors inside, then kept if it still fits in
/// (1+ε)Δ. Everything else is V_sp.
inline RawPartition compute_acd(const DynamicGraph& g, const Config& cfg, AcdPolicy policy = AcdPolicy::strict) {
  const Vertex n = g.n();
  const double delta = g.delta();
  const double friend_threshold = (1.0 - 2.0 * cfg.epsilon) * delta;
  const double min_inside = (1.0 - cfg.epsilon) * delta;
  const double max_size = (1.0 + cfg.epsilon) * delta;

  RawPartition raw;
  NeighborhoodEdgeCounts counts = neighborhood_edge_counts(g);
  raw.work += counts.work;

  std::vector<Vertex> parent(static_cast<std::size_t>(n) + 1);
  std::iota(parent.begin(), parent.end(), Vertex{0});
  auto find = [&](Vertex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [edge, codegree] : counts.codegrees) {
    if (static_cast<double>(codegree) >= friend_threshold) {
      const Vertex a = find(edge.first);
      const Vertex b = find(edge.second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }

  std::vector<std::vector<Vertex>> components(static_cast<std::size_t>(n) + 1);
  for (Vertex v = 1; v <= n; ++v) components[find(v)].push_back(v);

  std::vector<char> housed(static_cast<std::size_t>(n) + 1, 0);
  std::vector<char> inside(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::int64_t> inner_degree(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex root = 1; root <= n; ++root) {
    auto& comp = components[root];
    if (comp.size() < 2 || static_cast<double>(comp.size()) < min_inside) continue;
    for (Vertex v : comp) inside[v] = 1;
    std::vector<Vertex> doomed;
    for (Vertex v : comp) {
      std::int64_t k = 0;
      for (Vertex w : g.neighbors(v)) k += inside[w];
      inner_degree[v] = k;
      raw.work += g.degree(v);
      if (static_cast<double>(k) < min_inside) doomed.push_back(v);
    }
    while (!doomed.empty()) {
      const Vertex v = doomed.back();
      doomed.pop_back();
      if (!inside[v]) continue;
      inside[v] = 0;
      for (Vertex w : g.neighbors(v)) {
        if (!inside[w]) continue;
        if (static_cast<double>(--inner_degree[w]) < min_inside &&
            static_cast<double>(inner_degree[w] + 1) >= min_inside) {
          doomed.push_back(w);
        }
      }
      raw.work += g.degree(v);
    }
    std::vector<Vertex> kept;
    for (Vertex v : comp) {
      if (inside[v]) kept.push_back(v);
      inside[v] = 0;
    }
    if (!kept.empty() && static_cast<double>(kept.size()) <= max_size) {
      for (Vertex v : kept) housed[v] = 1;
      raw.cliques.push_back(std::move(kept));
    }
  }

  const double required = cfg.vsp_sparsity(g.delta());
  for (Vertex v = 1; v <= n; ++v) {
    if (housed[v]) continue;
    raw.sparse.push_back(v);
    if (policy == AcdPolicy::strict &&
        !rational_at_least(sparsity_from_count(g.delta(), counts.counts[v]), required)) {
      throw DecompositionFailed("vertex " + std::to_string(v) + " is neither housed in an almost-clique nor " +
                                std::to_string(required) + "-sparse");
    }
  }
  return raw;
}

namespace detail {

// Size of the lexicographic greedy maximal matching of F_D.
inline std::int64_t greedy_anti_matching(const DynamicGraph& g, const std::vector<Vertex>& members) {
  std::set<Vertex> used;
  std::int64_t size = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (used.count(members[i])) continue;
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (!used.count(members[j]) && !g.has_edge(members[i], members[j])) {
        used.insert(members[i]);
        used.insert(members[j]);
        ++size;
        break;
      }
    }
  }
  return size;
}

}  // namespace detail

/// Turns an almost-clique decomposition into a sparser-denser one.
///
/// Dissolves into S every clique with a_C + e_C ≥ 50ζ/(δε²), and every
/// clique where a randomly grown anti-matching could stall below ⌊8a_C⌋.
/// Any maximal matching has at least ⌈greedy/2⌉ edges, so that must reach
/// ⌊8a_C⌋.
inline Decomposition refine_to_sparser_denser(const RawPartition& raw, const DynamicGraph& g, const Config& cfg) {
  const long double threshold = cfg.dissolve_threshold();
  std::vector<std::vector<Vertex>> kept;
  std::vector<std::vector<Vertex>> dissolved;
  std::vector<char> inside(static_cast<std::size_t>(g.n()) + 1, 0);
  for (const auto& members : raw.cliques) {
    for (Vertex v : members) inside[v] = 1;
    std::int64_t anti_sum = 0;
    std::int64_t ext_sum = 0;
    const auto size = static_cast<std::int64_t>(members.size());
    for (Vertex v : members) {
      std::int64_t inner = 0;
      for (Vertex w : g.neighbors(v)) inner += inside[w];
      anti_sum += size - 1 - inner;
      ext_sum += static_cast<std::int64_t>(g.degree(v)) - inner;
    }
    for (Vertex v : members) inside[v] = 0;
    const bool too_loose = static_cast<long double>(anti_sum + ext_sum) >= threshold * size;
    const bool unmatchable = 2 * ((8 * anti_sum) / size) > detail::greedy_anti_matching(g, members) + 1;
    if (too_loose || unmatchable) {
      dissolved.push_back(members);
    } else {
      kept.push_back(members);
    }
  }
  Decomposition d = Decomposition::from_partition(g, std::move(kept));
  d.dissolved_ = std::move(dissolved);
  return d;
}

/// I_D under the current external and anti-degrees.
inline std::vector<Vertex> classify_inliers(const Decomposition& d, std::size_t clique) {
  std::vector<Vertex> out;
  for (Vertex v : d.clique(clique).members) {
    if (d.is_inlier(v)) out.push_back(v);
  }
  return out;
}

enum class DecompositionClause { partition, sparsity, clique_size, clique_degree, density, views };

inline const char* to_string(DecompositionClause c) {
  switch (c) {
    case DecompositionClause::partition: return "partition";
    case DecompositionClause::sparsity: return "sparsity";
    case DecompositionClause::clique_size: return "clique-size";
    case DecompositionClause::clique_degree: return "clique-degree";
    case DecompositionClause::density: return "density";
    case DecompositionClause::views: return "views";
  }
  return "?";
}

struct DecompositionViolation {
  DecompositionClause clause;
  Vertex vertex = kNoVertex;
  std::size_t clique = 0;
  std::string details;
};

struct DecompositionReport {
  std::vector<DecompositionViolation> violations;
  bool ok() const { return violations.empty(); }
  bool has(DecompositionClause c) const {
    return std::any_of(violations.begin(), violations.end(), [c](const auto& v) { return v.clause == c; });
  }
};

/// Checks every clause of the sparser-denser definition plus consistency of
/// the maintained E, A, F_D and sums against the graph.
inline DecompositionReport validate_decomposition(const Decomposition& d, const DynamicGraph& g, const Config& cfg) {
  DecompositionReport report;
  auto flag = [&](DecompositionClause c, Vertex v, std::size_t i, std::string details) {
    report.violations.push_back({c, v, i, std::move(details)});
  };
  if (d.n() != g.n()) {
    flag(DecompositionClause::partition, kNoVertex, 0, "vertex count mismatch");
    return report;
  }
  std::vector<std::size_t> seen(static_cast<std::size_t>(g.n()) + 1, 0);
  for (std::size_t i = 0; i < d.clique_count(); ++i) {
    for (Vertex v : d.clique(i).members) {
      if (d.part(v) != i) flag(DecompositionClause::partition, v, i, "member not labelled with its clique");
      ++seen[v];
    }
  }
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (!d.is_sparse(v) && seen[v] != 1) flag(DecompositionClause::partition, v, d.part(v), "label without membership");
  }

  const double delta = g.delta();
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (d.is_sparse(v) && !rational_at_least(sparsity(g, v), cfg.zeta)) {
      flag(DecompositionClause::sparsity, v, 0, "sparser vertex has sparsity " + sparsity(g, v).to_string());
    }
  }

  for (std::size_t i = 0; i < d.clique_count(); ++i) {
    const Clique& c = d.clique(i);
    if (static_cast<double>(c.size()) > (1.0 + cfg.epsilon) * delta) {
      flag(DecompositionClause::clique_size, kNoVertex, i, "size " + std::to_string(c.size()));
    }
    std::int64_t anti_sum = 0;
    std::int64_t ext_sum = 0;
    std::set<std::uint64_t> anti_edges;
    for (Vertex v : c.members) {
      std::set<Vertex> ext;
      std::set<Vertex> anti;
      std::int64_t inner = 0;
      for (Vertex w : g.neighbors(v)) {
        if (d.part(w) == i) {
          ++inner;
        } else {
          ext.insert(w);
        }
      }
      for (Vertex w : c.members) {
        if (w != v && !g.has_edge(v, w)) {
          anti.insert(w);
          anti_edges.insert(Clique::pack(v, w));
        }
      }
      if (static_cast<double>(inner) < (1.0 - cfg.epsilon) * delta) {
        flag(DecompositionClause::clique_degree, v, i, "inner degree " + std::to_string(inner));
      }
      if (ext != d.external(v)) flag(DecompositionClause::views, v, i, "E(v) mismatch");
      if (anti != d.anti(v)) flag(DecompositionClause::views, v, i, "A(v) mismatch");
      anti_sum += static_cast<std::int64_t>(anti.size());
      ext_sum += static_cast<std::int64_t>(ext.size());
    }
    if (anti_sum != c.anti_sum || ext_sum != c.ext_sum) {
      flag(DecompositionClause::views, kNoVertex, i, "a_D/e_D sums mismatch");
    }
    if (anti_edges.size() != c.anti_edges.size() ||
        !std::equal(anti_edges.begin(), anti_edges.end(), c.anti_edges.begin())) {
      flag(DecompositionClause::views, kNoVertex, i, "F_D mismatch");
    }
    if (c.size() > 0 &&
        static_cast<long double>(anti_sum + ext_sum) > static_cast<long double>(cfg.dissolve_threshold()) * c.size()) {
      flag(DecompositionClause::density, kNoVertex, i, "a_D + e_D above 50ζ/(δε²)");
    }
  }
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (d.is_sparse(v) && (!d.external(v).empty() || !d.anti(v).empty())) {
      flag(DecompositionClause::views, v, 0, "sparser vertex carries E/A sets");
    }
  }
  return report;
}

/// Static per-phase build: almost-cliques, then refinement.
inline Decomposition build_decomposition(const DynamicGraph& g, const Config& cfg, AcdPolicy policy,
                                         std::uint64_t* work = nullptr) {
  RawPartition raw = compute_acd(g, cfg, policy);
  if (work) *work += raw.work;
  return refine_to_sparser_denser(raw, g, cfg);
}

}  // namespace dyncolor
