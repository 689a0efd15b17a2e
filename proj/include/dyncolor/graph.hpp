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
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dyncolor/types.hpp"

namespace dyncolor {

/// Undirected simple graph on the fixed vertex set {1..n} with a hard cap Δ
/// on every degree.
///
/// Each vertex keeps an ascending neighbor list and a bit row, so adjacency
/// tests are O(1), neighbor iteration is ordered, and common-neighbor counts
/// run at word speed.
class DynamicGraph {
 public:
  DynamicGraph() = default;
  DynamicGraph(Vertex n, std::uint32_t delta_cap)
      : n_(n), delta_(delta_cap), words_((static_cast<std::size_t>(n) + 64) / 64),
        bits_(words_ * (static_cast<std::size_t>(n) + 1), 0), adj_(static_cast<std::size_t>(n) + 1) {}

  Vertex n() const { return n_; }
  std::uint32_t delta() const { return delta_; }
  std::size_t edge_count() const { return edges_; }

  bool valid_vertex(Vertex v) const { return v >= 1 && v <= n_; }

  bool has_edge(Vertex u, Vertex v) const {
    if (!valid_vertex(u) || !valid_vertex(v)) return false;
    return (row(u)[v >> 6] >> (v & 63)) & 1U;
  }

  std::uint32_t degree(Vertex v) const { return static_cast<std::uint32_t>(adj_[v].size()); }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }

  void insert_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    if (has_edge(u, v)) throw DuplicateEdge(describe("duplicate edge", u, v));
    if (degree(u) >= delta_ || degree(v) >= delta_) {
      throw DegreeCapExceeded(describe("insertion exceeds degree cap " + std::to_string(delta_), u, v));
    }
    link(u, v);
    link(v, u);
    ++edges_;
  }

  void delete_edge(Vertex u, Vertex v) {
    check_pair(u, v);
    if (!has_edge(u, v)) throw MissingEdge(describe("missing edge", u, v));
    unlink(u, v);
    unlink(v, u);
    --edges_;
  }

  /// |N(u) ∩ N(v)|.
  std::uint32_t common_neighbors(Vertex u, Vertex v) const {
    const std::uint64_t* a = row(u);
    const std::uint64_t* b = row(v);
    std::uint32_t count = 0;
    for (std::size_t w = 0; w < words_; ++w) count += std::popcount(a[w] & b[w]);
    return count;
  }

  /// Words per bit row; the cost unit of common_neighbors().
  std::size_t row_words() const { return words_; }

  /// All edges {u < v}, ascending.
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edges_);
    for (Vertex u = 1; u <= n_; ++u) {
      for (Vertex v : adj_[u]) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    return out;
  }

  /// Symmetry, simplicity and the degree cap. Empty string means consistent.
  std::string check_invariants() const {
    std::size_t half_edges = 0;
    for (Vertex u = 1; u <= n_; ++u) {
      if (adj_[u].size() > delta_) return "degree cap violated at " + std::to_string(u);
      if (!std::is_sorted(adj_[u].begin(), adj_[u].end())) return "unsorted adjacency at " + std::to_string(u);
      for (Vertex v : adj_[u]) {
        if (v == u) return "self-loop at " + std::to_string(u);
        if (!has_edge(v, u) || !std::binary_search(adj_[v].begin(), adj_[v].end(), u)) {
          return "asymmetric edge " + std::to_string(u) + "-" + std::to_string(v);
        }
      }
      half_edges += adj_[u].size();
    }
    if (half_edges != 2 * edges_) return "edge count mismatch";
    return {};
  }

  friend bool operator==(const DynamicGraph& a, const DynamicGraph& b) {
    return a.n_ == b.n_ && a.delta_ == b.delta_ && a.adj_ == b.adj_;
  }

 private:
  const std::uint64_t* row(Vertex v) const { return bits_.data() + words_ * v; }
  std::uint64_t* row(Vertex v) { return bits_.data() + words_ * v; }

  void check_pair(Vertex u, Vertex v) const {
    if (!valid_vertex(u) || !valid_vertex(v)) throw InvalidVertex(describe("vertex out of range", u, v));
    if (u == v) throw InvalidVertex(describe("self-loop", u, v));
  }

  void link(Vertex u, Vertex v) {
    auto& list = adj_[u];
    list.insert(std::lower_bound(list.begin(), list.end(), v), v);
    row(u)[v >> 6] |= std::uint64_t{1} << (v & 63);
  }

  void unlink(Vertex u, Vertex v) {
    auto& list = adj_[u];
    list.erase(std::lower_bound(list.begin(), list.end(), v));
    row(u)[v >> 6] &= ~(std::uint64_t{1} << (v & 63));
  }

  static std::string describe(const std::string& what, Vertex u, Vertex v) {
    return what + " {" + std::to_string(u) + "," + std::to_string(v) + "}";
  }

  Vertex n_ = 0;
  std::uint32_t delta_ = 0;
  std::size_t words_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::vector<Vertex>> adj_;
};

}  // namespace dyncolor
