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
#include <optional>
#include <utility>
#include <vector>

#include "dyncolor/adversary.hpp"
#include "dyncolor/engine.hpp"
#include "dyncolor/verifier.hpp"

namespace dyncolor {
namespace {

using Edge = std::pair<Vertex, Vertex>;

// Long phases so a hand-built state is never replaced mid-test.
Config frozen_config() {
  Config cfg;
  cfg.epsilon = 1.0 / 8;
  cfg.zeta = 1e6;
  return cfg;
}

struct Scenario {
  Vertex n;
  std::uint32_t delta;
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> cliques;
  std::vector<Color> colors;  // colors[v-1]
  std::vector<Edge> matched;
};

Engine make_engine(const Scenario& s) {
  DynamicGraph g(s.n, s.delta);
  for (auto [u, v] : s.edges) g.insert_edge(u, v);
  Engine e(g, frozen_config(), 1, {EngineMode::naive});
  Decomposition d = Decomposition::from_partition(e.graph(), s.cliques);
  ColoringState state(s.n, s.delta);
  for (Vertex v = 1; v <= s.n; ++v) state.set_color(v, s.colors[v - 1]);
  for (auto [u, v] : s.matched) state.match(u, v);
  e.install(std::move(d), std::move(state));
  return e;
}

std::vector<Edge> clique_edges(Vertex first, Vertex last, const std::vector<Edge>& missing = {}) {
  std::vector<Edge> out;
  for (Vertex u = first; u <= last; ++u) {
    for (Vertex v = u + 1; v <= last; ++v) {
      if (std::find(missing.begin(), missing.end(), Edge{u, v}) == missing.end()) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<Vertex> range(Vertex first, Vertex last) {
  std::vector<Vertex> out;
  for (Vertex v = first; v <= last; ++v) out.push_back(v);
  return out;
}

void expect_clean(const Engine& e) {
  const auto report = e.verify();
  EXPECT_TRUE(report.empty()) << (report.empty() ? "" : report.front().details);
}

// Path 1-2-3 in S.
Scenario sparse_path() {
  return {6, 5, {{2, 3}}, {}, {1, 1, 2, 0, 0, 0}, {}};
}

TEST(HandleInsert, DifferentColorsLeaveColoringUnchanged) {
  Scenario s = sparse_path();
  s.colors = {1, 2, 3, 1, 2, 3};
  Engine e = make_engine(s);
  const auto before = e.state().colors();
  const auto report = e.apply(Update::insert(1, 2));
  EXPECT_TRUE(e.graph().has_edge(1, 2));
  EXPECT_EQ(e.state().colors(), before);
  EXPECT_EQ(report.cost.recolorings, 0u);
}

TEST(RecolorSparse, UnusedColorIsTakenDirectly) {
  Scenario s = sparse_path();
  s.colors = {1, 1, 2, 3, 4, 5};
  Engine e = make_engine(s);
  e.rng().force(6);
  const auto report = e.apply(Update::insert(1, 2));
  EXPECT_EQ(e.state().color(1), 6u);
  EXPECT_EQ(e.state().color(2), 1u);
  EXPECT_EQ(report.cost.color_trials, 1u);
  EXPECT_EQ(report.sparse_recolors, 1u);
  EXPECT_EQ(report.max_steal_depth, 0u);
  expect_clean(e);
}

TEST(RecolorSparse, ColorOfSparseNeighborIsRejected) {
  Scenario s = sparse_path();
  s.colors = {1, 1, 2, 3, 4, 5};
  Engine e = make_engine(s);
  e.rng().force(1);
  e.rng().force(6);
  const auto report = e.apply(Update::insert(1, 2));
  EXPECT_EQ(e.state().color(1), 6u);
  EXPECT_EQ(report.cost.color_trials, 2u);
}

// K5 on 1..5 as D, sparse 6 adjacent to 2, Δ = 6.
Scenario k5_with_sparse() {
  Scenario s{7, 6, clique_edges(1, 5), {range(1, 5)}, {1, 2, 3, 4, 5, 1, 7}, {}};
  s.edges.emplace_back(6, 2);
  return s;
}

TEST(RecolorSparse, StealsFromUnmatchedDenserNeighbor) {
  Engine e = make_engine(k5_with_sparse());
  e.rng().force(2);
  const auto report = e.apply(Update::insert(6, 1));
  EXPECT_EQ(e.state().color(6), 2u);
  // 2 is an inlier: smallest color of L(D) = {2, 6, 7} not used by E(2) = {6}.
  EXPECT_EQ(e.state().color(2), 6u);
  EXPECT_EQ(report.sparse_recolors, 1u);
  EXPECT_EQ(report.max_steal_depth, 1u);
  expect_clean(e);
}

TEST(RecolorDense, InlierTakesSmallestFreeCliqueColor) {
  Scenario s = k5_with_sparse();
  s.colors[5] = 3;  // vertex 6
  Engine e = make_engine(s);
  e.apply(Update::insert(3, 6));
  // L(D) = {1..7} \ {1,2,4,5} = {3, 6, 7}; E(3) = {6} holds 3.
  EXPECT_EQ(e.state().color(3), 6u);
  expect_clean(e);
}

TEST(RecolorDense, AccountingExampleInlierGetsFourOrFive) {
  // K5 minus {1,2}, Δ = 4, colors 1,1,⊥,2,3.
  Scenario s{5, 4, clique_edges(1, 5, {{1, 2}}), {range(1, 5)}, {1, 1, 0, 2, 3}, {{1, 2}}};
  Engine e = make_engine(s);
  Recolorer rc = e.recolorer();
  rc.recolor_dense(3);
  EXPECT_EQ(e.state().color(3), 4u);
  EXPECT_EQ(oracle::clique_palette(e.state(), e.decomposition(), 0), std::vector<Color>{5});
}

// K_9 on 1..9 where vertex 1 has two pendant neighbors 10 and 11, so it is
// an outlier (e_1 = 2 > 8·2/9).  Δ = 12.
Scenario outlier_setup() {
  Scenario s{12, 12, clique_edges(1, 9), {range(1, 9)}, {0, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 1}, {}};
  s.edges.emplace_back(1, 10);
  s.edges.emplace_back(1, 11);
  return s;
}

TEST(RecolorDense, OutlierTakesFreeColorWithoutSteal) {
  Engine e = make_engine(outlier_setup());
  ASSERT_FALSE(e.decomposition().is_inlier(1));
  Recolorer rc = e.recolorer();
  e.rng().force(12);
  rc.recolor_dense(1);
  EXPECT_EQ(e.state().color(1), 12u);
  EXPECT_EQ(rc.max_steal_depth(), 0u);
  expect_clean(e);
}

TEST(RecolorDense, OutlierRejectsColorOfExternalNeighbor) {
  Engine e = make_engine(outlier_setup());
  Recolorer rc = e.recolorer();
  e.rng().force(10);  // held by pendant 10
  e.rng().force(13);
  rc.recolor_dense(1);
  EXPECT_EQ(e.state().color(1), 13u);
}

TEST(RecolorDense, OutlierStealsFromUniqueInlier) {
  Engine e = make_engine(outlier_setup());
  Recolorer rc = e.recolorer();
  e.rng().force(5);  // held by inlier 5 only
  rc.recolor_dense(1);
  EXPECT_EQ(e.state().color(1), 5u);
  // 5 takes the smallest color of L(D) = {1, 10, 11, 12, 13}.
  EXPECT_EQ(e.state().color(5), 1u);
  EXPECT_EQ(rc.max_steal_depth(), 1u);
  expect_clean(e);
}

TEST(RecolorDense, OutlierRejectsRedundantColor) {
  Scenario s = outlier_setup();
  s.edges.erase(std::find(s.edges.begin(), s.edges.end(), Edge{2, 3}));
  s.colors[2] = 2;  // 3 shares color 2 with 2
  s.matched = {{2, 3}};
  s.colors[11] = 3;
  Engine e = make_engine(s);
  Recolorer rc = e.recolorer();
  e.rng().force(2);
  e.rng().force(13);
  rc.recolor_dense(1);
  EXPECT_EQ(e.state().color(1), 13u);
  EXPECT_EQ(e.state().color(2), 2u);
  expect_clean(e);
}

// K_17 minus {1,2} on 1..17, sparse 18..20, Δ = 18. 1 and 2 form the
// matched pair with color 1; 3..17 have colors 2..16.
Scenario matched_pair_setup() {
  std::vector<Color> colors = {1, 1};
  for (Color c = 2; c <= 16; ++c) colors.push_back(c);
  colors.insert(colors.end(), {1, 17, 18});
  return {20, 18, clique_edges(1, 17, {{1, 2}}), {range(1, 17)}, colors, {{1, 2}}};
}

TEST(RecolorMatching, ConflictFromOutsideRecolorsPair) {
  Engine e = make_engine(matched_pair_setup());
  e.rng().force(19);
  e.apply(Update::insert(1, 18));
  EXPECT_EQ(e.state().matched(1), 2u);
  EXPECT_EQ(e.state().color(1), 19u);
  EXPECT_EQ(e.state().color(2), 19u);
  expect_clean(e);
}

TEST(RecolorMatching, StealsFromUnmatchedCliqueMember) {
  Engine e = make_engine(matched_pair_setup());
  e.rng().force(3);  // held by vertex 4
  e.apply(Update::insert(1, 18));
  EXPECT_EQ(e.state().color(1), 3u);
  EXPECT_EQ(e.state().color(2), 3u);
  // L(D) = {1, 17, 18, 19}; 4 has no external neighbors.
  EXPECT_EQ(e.state().color(4), 1u);
  EXPECT_EQ(e.state().redundant_count(0), 1u);
  expect_clean(e);
}

TEST(RecolorMatching, RejectsColorOfExternalNeighbor) {
  Engine e = make_engine(matched_pair_setup());
  e.rng().force(17);  // vertex 19, adjacent to 2 below
  e.rng().force(19);
  e.apply(Update::insert(2, 19));
  EXPECT_EQ(e.state().color(2), 1u);
  e.apply(Update::insert(1, 18));
  EXPECT_EQ(e.state().color(1), 19u);
  expect_clean(e);
}

TEST(RecolorMatching, FreshPairIsMatchedAndSameColored) {
  Scenario s = matched_pair_setup();
  s.matched.clear();
  s.colors[0] = 0;
  s.colors[1] = 0;
  Engine e = make_engine(s);
  Recolorer rc = e.recolorer();
  e.rng().force(19);
  rc.recolor_matching(1, 2);
  EXPECT_EQ(e.state().matched(1), 2u);
  EXPECT_EQ(e.state().matched(2), 1u);
  EXPECT_EQ(e.state().color(1), 19u);
  EXPECT_EQ(e.state().redundant_count(0), 1u);
}

TEST(HandleInsert, EdgeInsideMatchedPairUnmatches) {
  Engine e = make_engine(matched_pair_setup());
  e.apply(Update::insert(1, 2));
  EXPECT_EQ(e.state().matched(1), kNoVertex);
  EXPECT_EQ(e.state().matched(2), kNoVertex);
  EXPECT_EQ(e.state().color(2), 1u);
  // L(D) = {17, 18, 19}.
  EXPECT_EQ(e.state().color(1), 17u);
  EXPECT_EQ(e.state().redundant_count(0), 0u);
  expect_clean(e);
}

// K_20 with anti-edges (1,2), (3,4), ..., (11,12); a_D = 12/20 keeps the
// target ⌊8a_D⌋ = 4 even after one anti-edge closes.  Δ = 21.
Scenario six_anti_edges() {
  std::vector<Edge> missing;
  for (Vertex v = 1; v <= 11; v += 2) missing.emplace_back(v, v + 1);
  std::vector<Color> colors = {1, 1, 2, 2, 3, 3, 4, 4};
  for (Color c = 5; c <= 16; ++c) colors.push_back(c);
  return {20, 21, clique_edges(1, 20, missing), {range(1, 20)}, colors, {{1, 2}, {3, 4}, {5, 6}, {7, 8}}};
}

TEST(HandleInsert, MatchedPairEdgeTriggersAntiEdgeMatching) {
  Engine e = make_engine(six_anti_edges());
  ASSERT_EQ(e.decomposition().clique(0).matching_target(), 4);
  e.rng().force(3);   // F_D rank 3 after the insertion: (9,10)
  e.rng().force(20);  // unused color for the new pair
  e.apply(Update::insert(1, 2));
  EXPECT_EQ(e.decomposition().clique(0).matching_target(), 4);
  EXPECT_EQ(e.state().matched(1), kNoVertex);
  EXPECT_EQ(e.state().matched(9), 10u);
  EXPECT_EQ(e.state().color(9), 20u);
  EXPECT_EQ(e.state().color(10), 20u);
  EXPECT_EQ(e.state().redundant_count(0), 4u);
  // 9 and 10 released 5 and 6 before 1 was recolored.
  EXPECT_EQ(e.state().color(1), 5u);
  expect_clean(e);
}

TEST(HandleDelete, CrossCliqueDeletionRecolorsNothing) {
  Scenario s{42, 21, clique_edges(1, 21), {range(1, 21), range(22, 42)}, {}, {}};
  auto second = clique_edges(22, 42);
  s.edges.insert(s.edges.end(), second.begin(), second.end());
  s.edges.emplace_back(1, 22);
  for (Vertex v = 1; v <= 42; ++v) s.colors.push_back(v <= 21 ? v : v - 20);
  Engine e = make_engine(s);
  const auto report = e.apply(Update::remove(1, 22));
  EXPECT_EQ(report.cost.recolorings + report.cost.uncolorings, 0u);
  expect_clean(e);
}

TEST(HandleDelete, IntraCliqueDeletionAddsExactlyOnePair) {
  Scenario s{17, 18, clique_edges(1, 17, {{1, 2}}), {range(1, 17)}, {}, {}};
  for (Vertex v = 1; v <= 17; ++v) s.colors.push_back(v);
  Engine e = make_engine(s);
  ASSERT_EQ(e.decomposition().clique(0).matching_target(), 0);
  e.rng().force(1);   // F_D = {(1,2), (3,4)}: rank 1
  e.rng().force(18);
  e.apply(Update::remove(3, 4));
  EXPECT_EQ(e.decomposition().clique(0).matching_target(), 1);
  EXPECT_EQ(e.state().redundant_count(0), 1u);
  EXPECT_EQ(e.state().matched(3), 4u);
  EXPECT_EQ(e.state().color(3), 18u);
  EXPECT_EQ(e.state().color(4), 18u);
  expect_clean(e);
}

TEST(AddAntiEdgeMatching, FirstSampleAcceptedWhenAllUnmatched) {
  Scenario s{17, 18, clique_edges(1, 17, {{1, 2}, {3, 4}}), {range(1, 17)}, {}, {}};
  for (Vertex v = 1; v <= 17; ++v) s.colors.push_back(v);
  Engine e = make_engine(s);
  CostMeter before = e.meter();
  Recolorer rc = e.recolorer();
  e.rng().force(0);
  e.rng().force(19);
  rc.add_anti_edge_matching(0);
  EXPECT_EQ(e.meter().anti_edge_samples - before.anti_edge_samples, 1u);
  EXPECT_EQ(e.state().matched(1), 2u);
  EXPECT_EQ(e.state().color(2), 19u);
}

TEST(AddAntiEdgeMatching, ThrowsWithoutAntiEdges) {
  Scenario s{5, 4, clique_edges(1, 5), {range(1, 5)}, {1, 2, 3, 4, 5}, {}};
  Engine e = make_engine(s);
  Recolorer rc = e.recolorer();
  EXPECT_THROW(rc.add_anti_edge_matching(0), PhaseRestart);
}

TEST(NaiveRecolor, IsolatedVertexGetsColorOne) {
  Scenario s{3, 2, {}, {}, {0, 2, 3}, {}};
  Engine e = make_engine(s);
  e.recolorer().naive_recolor(1);
  EXPECT_EQ(e.state().color(1), 1u);
}

TEST(NaiveRecolor, FullNeighborhoodForcesTopColor) {
  Scenario s{5, 4, {{1, 2}, {1, 3}, {1, 4}, {1, 5}}, {}, {0, 1, 2, 3, 4}, {}};
  Engine e = make_engine(s);
  e.recolorer().naive_recolor(1);
  EXPECT_EQ(e.state().color(1), 5u);
}

TEST(NaiveRecolor, MatchesMinimumFreeColor) {
  Rng rng(12);
  GeneratedGraph gen = generate_graph(GraphFamily::random, 80, 12, 0.8, rng);
  Engine e(gen.graph, frozen_config(), 3, {EngineMode::naive});
  EXPECT_TRUE(check_proper(e.graph(), e.state()).empty());
  for (int i = 0; i < 300; ++i) {
    const auto v = static_cast<Vertex>(rng.uniform(1, 80));
    e.mutable_state().set_color(v, kNoColor);
    const auto free_colors = oracle::palette(e.state(), e.graph(), v);
    e.recolorer().naive_recolor(v);
    ASSERT_EQ(e.state().color(v), free_colors.front());
  }
}

TEST(NaiveEngine, ConflictRecolorsFirstEndpoint) {
  DynamicGraph g(3, 2);
  g.insert_edge(2, 3);
  Engine e(g, frozen_config(), 1, {EngineMode::naive});
  ASSERT_FALSE(e.uses_decomposition());
  e.mutable_state().set_color(1, e.state().color(2));
  e.apply(Update::insert(1, 2));
  EXPECT_TRUE(check_proper(e.graph(), e.state()).empty());
}

TEST(Engine, PhaseCounterResetsEveryPhase) {
  Config cfg;
  cfg.zeta = 32;
  cfg.gamma = 1.0 / 8;  // t = 4
  Rng rng(2);
  GeneratedGraph gen = generate_graph(GraphFamily::mixed, 128, 32, 0.5, rng);
  Engine e(gen.graph, cfg, 5, {EngineMode::dynamic});
  ASSERT_EQ(e.phase_length(), 4u);
  EXPECT_EQ(e.phases(), 1u);
  EdgePool pool;
  for (auto [u, v] : e.graph().edges()) pool.insert(u, v);
  for (int i = 0; i < 12; ++i) {
    const auto [u, v] = pool.sample(rng);
    pool.erase(u, v);
    const auto report = e.apply(Update::remove(u, v));
    EXPECT_LT(e.phase_counter(), e.phase_length());
    EXPECT_EQ(report.phase_started, (i + 1) % 4 == 0);
  }
  EXPECT_EQ(e.phases(), 4u);
}

struct SweepCase {
  const char* name;
  GraphFamily family;
  int adversary;  // 0 conflict, 1 matching, 2 deletions
};

class AdversarialSweep : public ::testing::TestWithParam<SweepCase> {};

TEST_P(AdversarialSweep, InvariantsHoldAfterEveryUpdate) {
  const SweepCase& c = GetParam();
  const Vertex n = 128;
  const std::uint32_t delta = 32;
  Config cfg = Config::automatic(n, delta);
  cfg.gamma = 0.5;  // t = 13 instead of a fresh phase per update
  Rng rng(77);
  GeneratedGraph gen = generate_graph(c.family, n, delta, 0.5, rng);
  Engine e(gen.graph, cfg, 9, {EngineMode::dynamic});
  Rng adv(78);
  std::uint32_t max_sparse = 0;
  std::uint32_t max_depth = 0;
  for (int step = 0; step < 10000; ++step) {
    std::optional<Update> up;
    if (c.adversary == 0) {
      up = conflict_adversary(e.view(), adv);
    } else if (c.adversary == 1) {
      up = matching_attacker(e.view(), e.decomposition(), adv);
    } else {
      up = random_deletion(e.graph(), adv);
    }
    if (!up) break;
    const auto report = e.apply(*up);
    max_sparse = std::max(max_sparse, report.sparse_recolors);
    max_depth = std::max(max_depth, report.max_steal_depth);
    const auto violations = e.verify();
    ASSERT_TRUE(violations.empty()) << "step " << step << ": " << to_string(violations.front().kind) << " "
                                    << violations.front().details;
  }
  EXPECT_LE(max_sparse, 1u);
  EXPECT_LE(max_depth, 3u);
}

INSTANTIATE_TEST_SUITE_P(Families, AdversarialSweep,
                         ::testing::Values(SweepCase{"conflict_mixed", GraphFamily::mixed, 0},
                                           SweepCase{"matching_planted", GraphFamily::planted, 1},
                                           SweepCase{"deletions_planted", GraphFamily::planted, 2}),
                         [](const auto& info) { return std::string(info.param.name); });

}  // namespace
}  // namespace dyncolor
