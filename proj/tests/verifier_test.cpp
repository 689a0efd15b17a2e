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

#include <set>
#include <vector>

#include "dyncolor/adversary.hpp"
#include "dyncolor/engine.hpp"
#include "dyncolor/verifier.hpp"

namespace dyncolor {
namespace {

std::set<std::pair<Vertex, Vertex>> monochromatic_edges(const DynamicGraph& g, const ColoringState& s) {
  std::set<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 1; u <= g.n(); ++u) {
    for (Vertex v = u + 1; v <= g.n(); ++v) {
      if (oracle::adjacent_by_scan(g, u, v) && s.color(u) == s.color(v)) out.insert({u, v});
    }
  }
  return out;
}

TEST(CheckProper, ProperColoringIsClean) {
  DynamicGraph g(3, 2);
  g.insert_edge(1, 2);
  g.insert_edge(2, 3);
  ColoringState s(3, 2);
  s.set_color(1, 1);
  s.set_color(2, 2);
  s.set_color(3, 1);
  EXPECT_TRUE(check_proper(g, s).empty());
}

TEST(CheckProper, MonochromaticEdgeIsOneViolation) {
  DynamicGraph g(2, 1);
  g.insert_edge(1, 2);
  ColoringState s(2, 1);
  s.set_color(1, 1);
  s.set_color(2, 1);
  const auto report = check_proper(g, s);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, ViolationKind::propriety);
  EXPECT_EQ(report[0].location, (std::vector<std::uint64_t>{1, 2}));
}

TEST(CheckProper, UncoloredVertexIsReported) {
  DynamicGraph g(2, 1);
  ColoringState s(2, 1);
  s.set_color(1, 1);
  const auto report = check_proper(g, s);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].location, std::vector<std::uint64_t>{2});
}

TEST(CheckProper, FuzzedCorruptionsAreFoundExactly) {
  Rng rng(31);
  for (int round = 0; round < 50; ++round) {
    GeneratedGraph gen = generate_graph(GraphFamily::random, 60, 10, 0.8, rng);
    Engine e(gen.graph, Config::automatic(60, 10), round, {EngineMode::naive});
    ColoringState s = e.state();
    for (int k = 0; k < 3 && gen.graph.edge_count() > 0; ++k) {
      const auto edges = gen.graph.edges();
      const auto [u, v] = edges[rng.below(edges.size())];
      s.set_color(u, s.color(v));
    }
    const auto injected = monochromatic_edges(gen.graph, s);
    std::set<std::pair<Vertex, Vertex>> found;
    for (const Violation& viol : check_proper(gen.graph, s)) {
      ASSERT_EQ(viol.location.size(), 2u);
      found.insert({static_cast<Vertex>(viol.location[0]), static_cast<Vertex>(viol.location[1])});
    }
    EXPECT_EQ(found, injected);
  }
}

class InvariantCheck : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng rng(13);
    GeneratedGraph gen = generate_graph(GraphFamily::planted, 240, 48, 0.5, rng);
    engine = std::make_unique<Engine>(gen.graph, cfg, 3, EngineOptions{EngineMode::dynamic});
    ASSERT_GT(engine->decomposition().clique_count(), 0u);
    ASSERT_TRUE(engine->verify().empty());
    for (Vertex v = 1; v <= engine->graph().n(); ++v) {
      const Vertex w = engine->state().matched(v);
      if (w > v) pair = {v, w};
    }
  }
  ViolationReport check() const {
    return check_invariants(engine->graph(), engine->decomposition(), engine->state(), cfg);
  }
  Config cfg = [] {
    Config c = Config::automatic(240, 48);
    c.gamma = 0.5;
    return c;
  }();
  std::unique_ptr<Engine> engine;
  std::pair<Vertex, Vertex> pair{kNoVertex, kNoVertex};
};

TEST_F(InvariantCheck, PostFreshStateIsClean) {
  EXPECT_TRUE(check().empty());
  EXPECT_TRUE(engine->verify_balance().empty());
}

TEST_F(InvariantCheck, MatchedPairWithDifferentColorsIsFlagged) {
  ASSERT_NE(pair.first, kNoVertex);
  const auto& d = engine->decomposition();
  const std::uint32_t clique = d.part(pair.first);
  engine->mutable_state().set_color(pair.second, engine->state().clique_palette(clique).nth(0));
  EXPECT_GE(count_kind(check(), ViolationKind::matched_symmetry), 1u);
}

TEST_F(InvariantCheck, OneSidedMatchIsFlagged) {
  ASSERT_NE(pair.first, kNoVertex);
  engine->mutable_state().set_matched_raw(pair.second, kNoVertex);
  EXPECT_GE(count_kind(check(), ViolationKind::matched_symmetry), 1u);
}

TEST_F(InvariantCheck, ThirdHolderBreaksDenseBalance) {
  ASSERT_NE(pair.first, kNoVertex);
  const std::uint32_t clique = engine->decomposition().part(pair.first);
  for (Vertex v : engine->decomposition().clique(clique).members) {
    if (engine->state().matched(v) == kNoVertex) {
      engine->mutable_state().set_color(v, engine->state().color(pair.first));
      break;
    }
  }
  EXPECT_GE(count_kind(check(), ViolationKind::dense_balance), 1u);
}

TEST_F(InvariantCheck, DroppedPairBreaksMatchingInvariant) {
  const auto& d = engine->decomposition();
  std::uint32_t clique = 0;
  while (clique < d.clique_count() && d.clique(clique).matching_target() == 0) ++clique;
  ASSERT_LT(clique, d.clique_count());
  ColoringState& s = engine->mutable_state();
  for (Vertex v : d.clique(clique).members) {
    const Vertex w = s.matched(v);
    if (w != kNoVertex) {
      s.unmatch(v);
      s.set_color(v, kNoColor);
      s.set_color(w, kNoColor);
    }
  }
  EXPECT_GE(count_kind(check(), ViolationKind::matching), 1u);
}

TEST_F(InvariantCheck, StaleExternalSetIsFlagged) {
  Decomposition d = engine->decomposition();
  const Vertex v = d.clique(0).members[0];
  d.mutable_external(v).clear();
  d.mutable_external(v).insert(v);
  const auto report = check_invariants(engine->graph(), d, engine->state(), cfg, InvariantScope::views);
  EXPECT_GE(count_kind(report, ViolationKind::view_consistency), 1u);
}

TEST_F(InvariantCheck, AccountingHoldsOnEveryDenseVertex) {
  const auto& d = engine->decomposition();
  for (std::size_t i = 0; i < d.clique_count(); ++i) {
    for (Vertex v : d.clique(i).members) {
      EXPECT_GE(static_cast<std::int64_t>(oracle::clique_palette_available(engine->state(), engine->graph(), d, v)),
                oracle::accounting_bound(engine->state(), engine->graph(), d, v));
    }
  }
}

TEST(CheckBalance, ThreeSameColoredInCliqueIsFlagged) {
  DynamicGraph g(10, 9);
  Decomposition d = Decomposition::from_partition(g, {{1, 2, 3, 4}});
  ColoringState s(10, 9);
  s.bind(d);
  for (Vertex v = 1; v <= 3; ++v) s.set_color(v, 5);
  Config cfg;
  cfg.zeta = 1;
  const auto report = check_balance(s, d, cfg, 0);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].kind, ViolationKind::balance);
}

TEST(CheckBalance, OversizedSparseClassIsFlagged) {
  const Vertex n = 200;
  DynamicGraph g(n, 4);
  const Decomposition d = Decomposition::all_sparse(n);
  ColoringState s(n, 4);
  s.bind(d);
  for (Vertex v = 1; v <= n; ++v) s.set_color(v, 1);
  Config cfg;
  cfg.zeta = 100;
  cfg.c_bal = 8;
  // Bound: 8·(200/100 + log₂ 200) ≈ 77.
  EXPECT_EQ(check_balance(s, d, cfg, 0).size(), 1u);
  EXPECT_TRUE(check_balance(s, d, cfg, 2000).empty());  // + 8·20
}

TEST(Oracles, SmallFuzzedGraphsMatchIncrementalViews) {
  Rng rng(64);
  for (int round = 0; round < 100; ++round) {
    const auto n = static_cast<Vertex>(rng.uniform(24, 64));
    const auto delta = static_cast<std::uint32_t>(rng.uniform(8, 16));
    GeneratedGraph gen = generate_graph(round % 2 ? GraphFamily::planted : GraphFamily::mixed, n, delta, 0.7, rng);
    Config cfg;
    cfg.zeta = 1;
    const Decomposition d = build_decomposition(gen.graph, cfg, AcdPolicy::lenient);
    ColoringState s(n, delta);
    for (Vertex v = 1; v <= n; ++v) s.set_color(v, static_cast<Color>(rng.uniform(0, delta + 1)));
    s.bind(d);
    for (Vertex v = 1; v <= n; ++v) {
      ASSERT_EQ(sparsity(gen.graph, v), brute_force_sparsity(gen.graph, v));
      if (d.is_sparse(v)) {
        std::vector<Color> expected;
        for (Color c = 1; c <= delta + 1; ++c) {
          bool used = false;
          for (Vertex u = 1; u <= n; ++u) {
            used = used || (d.is_sparse(u) && oracle::adjacent_by_scan(gen.graph, u, v) && s.color(u) == c);
          }
          if (!used) expected.push_back(c);
        }
        ASSERT_EQ(sparse_palette(s, gen.graph, d, v), expected);
      } else {
        ASSERT_EQ(accounting_lower_bound(s, gen.graph, d, v), oracle::accounting_bound(s, gen.graph, d, v));
      }
    }
    for (std::uint32_t i = 0; i < d.clique_count(); ++i) {
      const auto ld = oracle::clique_palette(s, d, i);
      ASSERT_EQ(std::vector<Color>(s.clique_palette(i).begin(), s.clique_palette(i).end()), ld);
    }
    ASSERT_TRUE(check_invariants(gen.graph, d, s, cfg, InvariantScope::views).empty());
  }
}

}  // namespace
}  // namespace dyncolor
