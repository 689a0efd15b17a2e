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

// Maintains a coloring of a small planted-clique graph while a conflict
// adversary keeps joining same-colored vertices.
#include <iostream>

#include "dyncolor/adversary.hpp"
#include "dyncolor/engine.hpp"

int main() {
  using namespace dyncolor;
  const Vertex n = 256;
  const std::uint32_t delta = 64;

  Rng graph_rng(7);
  GeneratedGraph g = generate_graph(GraphFamily::mixed, n, delta, 0.5, graph_rng);
  Engine engine(std::move(g.graph), Config::automatic(n, delta), /*seed=*/42, {EngineMode::dynamic});
  std::cout << "cliques: " << engine.decomposition().clique_count() << ", phase length: " << engine.phase_length()
            << "\n";

  Rng adversary(8);
  std::uint64_t work = 0;
  for (int step = 0; step < 2000; ++step) {
    const CostReport r = engine.apply(conflict_adversary(engine.view(), adversary));
    work += r.total_work();
  }
  const auto violations = engine.verify();
  std::cout << "edges: " << engine.graph().edge_count() << ", phases: " << engine.phases()
            << ", amortized work: " << static_cast<double>(work) / 2000 << ", violations: " << violations.size()
            << "\n";
  return violations.empty() ? 0 : 1;
}
