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

#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "dyncolor/adversary.hpp"
#include "dyncolor/fresh_coloring.hpp"
#include "dyncolor/verifier.hpp"

namespace dyncolor {
namespace {

struct Instance {
  DynamicGraph g;
  Config cfg;
  Decomposition d;
  ColoringState state;
  RetryCaps caps;
  CostMeter meter;

  Instance(DynamicGraph graph, Config c)
      : g(std::move(graph)), cfg(c), d(build_decomposition(g, cfg, AcdPolicy::lenient)), state(g.n(), g.delta()),
        caps(RetryCaps::standard(g.n(), g.delta(), cfg.phase_length())) {}

  FreshReport run(std::uint64_t seed) {
    Rng rng(seed);
    return fresh_coloring(g, d, state, rng, meter, caps);
  }
};

Config config(double zeta) {
  Config cfg;
  cfg.epsilon = 1.0 / 8;
  cfg.zeta = zeta;
  return cfg;
}

DynamicGraph clique_graph(std::uint32_t size, std::uint32_t cap) {
  DynamicGraph g(size, cap);
  for (Vertex u = 1; u <= size; ++u) {
    for (Vertex v = u + 1; v <= size; ++v) g.insert_edge(u, v);
  }
  return g;
}

TEST(FreshColoring, EmptyGraphIsColoredWithAllProperties) {
  Instance in(DynamicGraph(50, 10), config(16));
  const FreshReport r = in.run(1);
  EXPECT_TRUE(check_proper(in.g, in.state).empty());
  EXPECT_TRUE(verify_fresh_properties(in.g, in.d, in.state, in.cfg).empty());
  EXPECT_EQ(r.min_sparse_slack, 11u);
  // Vertices missed by the one-shot pass need exactly one trial each.
  EXPECT_EQ(r.sparse_trials, 50 - r.one_shot_colored);
}

TEST(FreshColoring, FullCliqueGetsDistinctColors) {
  Instance in(clique_graph(21, 20), config(1));
  ASSERT_EQ(in.d.clique_count(), 1u);
  ASSERT_TRUE(in.d.sparse_vertices().empty());
  const FreshReport r = in.run(2);
  EXPECT_EQ(r.matching_sizes, std::vector<std::uint64_t>{0});
  EXPECT_EQ(r.sparse_trials, 0u);
  std::vector<Color> colors(in.state.colors().begin() + 1, in.state.colors().end());
  std::sort(colors.begin(), colors.end());
  for (Color c = 1; c <= 21; ++c) EXPECT_EQ(colors[c - 1], c);
}

TEST(FreshColoring, PlantedMixedInstancePassesPropertyCheck) {
  Rng rng(500);
  GeneratedGraph gen = generate_graph(GraphFamily::mixed, 500, 125, 0.5, rng);
  Instance in(std::move(gen.graph), Config::automatic(500, 125));
  ASSERT_EQ(in.d.clique_count(), 2u);
  const FreshReport r = in.run(3);
  EXPECT_TRUE(check_proper(in.g, in.state).empty());
  const auto violations = verify_fresh_properties(in.g, in.d, in.state, in.cfg);
  EXPECT_TRUE(violations.empty()) << violations.front().details;
  EXPECT_TRUE(check_invariants(in.g, in.d, in.state, in.cfg).empty());
  ASSERT_EQ(r.matching_sizes.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_GE(static_cast<std::int64_t>(r.matching_sizes[i]), in.d.clique(i).matching_target());
  }
}

TEST(FreshColoring, DeterministicForSameSeed) {
  Rng rng(6);
  GeneratedGraph gen = generate_graph(GraphFamily::planted, 300, 60, 0.5, rng);
  Instance a(gen.graph, config(8));
  Instance b(gen.graph, config(8));
  EXPECT_EQ(a.run(42), b.run(42));
  EXPECT_EQ(a.state, b.state);
  EXPECT_EQ(a.meter, b.meter);
}

TEST(FreshColoring, StartsFromUncoloredStateWhateverCameBefore) {
  Rng rng(7);
  GeneratedGraph gen = generate_graph(GraphFamily::planted, 300, 60, 0.5, rng);
  Instance a(gen.graph, config(8));
  Instance b(gen.graph, config(8));
  a.run(5);
  a.state.match(1, 2);
  FreshReport ra = a.run(9);
  FreshReport rb = b.run(9);
  // Uncoloring the old state is metered as work; nothing else may differ.
  EXPECT_GT(ra.work, rb.work);
  ra.work = rb.work = 0;
  EXPECT_EQ(ra, rb);
  EXPECT_EQ(a.state, b.state);
}

TEST(OneShot, NoSparseVerticesIsNoOp) {
  Instance in(clique_graph(21, 20), config(1));
  Rng rng(1);
  EXPECT_EQ(one_shot_coloring(in.g, in.d, in.state, rng, in.meter), 0u);
  EXPECT_EQ(in.state.uncolored_count(), 21u);
}

TEST(OneShot, AdjacentSameColorBothUncolor) {
  DynamicGraph g(2, 1);
  g.insert_edge(1, 2);
  const Decomposition d = Decomposition::all_sparse(2);
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 2000 && hits < 5; ++seed) {
    ColoringState s(2, 1);
    s.bind(d);
    CostMeter meter;
    Rng rng(seed);
    rng.force(1);
    rng.force(1);
    one_shot_coloring(g, d, s, rng, meter);
    if (rng.forced_pending() == 0) {  // both were selected
      ++hits;
      EXPECT_FALSE(s.colored(1));
      EXPECT_FALSE(s.colored(2));
    } else if (rng.forced_pending() == 1) {
      EXPECT_EQ(s.uncolored_count(), 1u);
    }
  }
  EXPECT_EQ(hits, 5);
}

TEST(OneShot, OnlySparseVerticesEndColoredAndNoConflicts) {
  Rng rng(8);
  GeneratedGraph gen = generate_graph(GraphFamily::mixed, 400, 80, 0.6, rng);
  Instance in(gen.graph, Config::automatic(400, 80));
  ASSERT_GT(in.d.clique_count(), 0u);
  std::uint64_t colored = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ColoringState s(in.g.n(), in.g.delta());
    s.bind(in.d);
    Rng r(seed);
    colored += one_shot_coloring(in.g, in.d, s, r, in.meter);
    for (Vertex v = 1; v <= in.g.n(); ++v) {
      if (s.colored(v)) {
        ASSERT_TRUE(in.d.is_sparse(v));
        for (Vertex u : in.g.neighbors(v)) ASSERT_NE(s.color(u), s.color(v));
      }
    }
  }
  const double expected = 20.0 * static_cast<double>(in.d.sparse_vertices().size()) / 8.0;
  EXPECT_GT(static_cast<double>(colored), 0.6 * expected);
  EXPECT_LE(static_cast<double>(colored), 1.2 * expected);
}

TEST(ColorDense, LastVertexOfFullCliqueTakesTheRemainingColor) {
  Instance in(clique_graph(21, 20), config(1));
  in.state.bind(in.d);
  for (Vertex v = 1; v <= 20; ++v) in.state.set_color(v, v);
  Rng rng(1);
  color_dense(in.g, in.d, in.state, 21, rng, in.meter, 10);
  EXPECT_EQ(in.state.color(21), 21u);
}

TEST(ColorDense, EmptyPaletteThrows) {
  // Six members with Δ = 4: five of them can use up all five colors.
  DynamicGraph g(6, 4);
  for (Vertex v = 1; v <= 6; ++v) g.insert_edge(v, v % 6 + 1);
  Decomposition d = Decomposition::from_partition(g, {{1, 2, 3, 4, 5, 6}});
  ColoringState s(6, 4);
  s.bind(d);
  for (Vertex v = 1; v <= 5; ++v) s.set_color(v, v);
  Rng rng(1);
  CostMeter meter;
  EXPECT_THROW(color_dense(g, d, s, 6, rng, meter, 10), PaletteExhausted);
}

TEST(ColorDense, AcceptedColorIsFreeForVertexAndClique) {
  Rng rng(9);
  GeneratedGraph gen = generate_graph(GraphFamily::planted, 300, 60, 0.5, rng);
  Instance in(gen.graph, config(8));
  in.run(4);
  std::vector<Vertex> dense;
  for (Vertex v = 1; v <= in.g.n(); ++v) {
    if (!in.d.is_sparse(v) && in.state.matched(v) == kNoVertex) dense.push_back(v);
  }
  ASSERT_FALSE(dense.empty());
  for (int i = 0; i < 500; ++i) {
    const Vertex v = dense[rng.below(dense.size())];
    in.state.set_color(v, kNoColor);
    const auto ld = oracle::clique_palette(in.state, in.d, in.d.part(v));
    const auto lv = oracle::palette(in.state, in.g, v);
    color_dense(in.g, in.d, in.state, v, rng, in.meter, in.caps.dense);
    const Color c = in.state.color(v);
    ASSERT_TRUE(std::binary_search(ld.begin(), ld.end(), c));
    ASSERT_TRUE(std::binary_search(lv.begin(), lv.end(), c));
  }
}

TEST(VerifyFresh, TripleColorInCliqueIsFlagged) {
  Instance in(clique_graph(21, 22), config(1));
  in.run(3);
  ASSERT_TRUE(verify_fresh_properties(in.g, in.d, in.state, in.cfg).empty());
  // Corrupt: three members share color 1 (the graph is ignored by the checks).
  in.state.set_color(2, in.state.color(1));
  in.state.set_color(3, in.state.color(1));
  EXPECT_GE(count_kind(verify_fresh_properties(in.g, in.d, in.state, in.cfg), ViolationKind::dense_balance), 1u);
}

TEST(VerifyFresh, LowSlackIsFlagged) {
  Instance in(DynamicGraph(50, 10), config(1000));
  in.run(1);
  EXPECT_EQ(count_kind(verify_fresh_properties(in.g, in.d, in.state, in.cfg), ViolationKind::fresh_slack), 50u);
}

}  // namespace
}  // namespace dyncolor
