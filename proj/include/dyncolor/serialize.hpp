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

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "dyncolor/coloring_state.hpp"
#include "dyncolor/cost_meter.hpp"
#include "dyncolor/decomposition.hpp"
#include "dyncolor/fresh_coloring.hpp"
#include "dyncolor/verifier.hpp"

namespace dyncolor {

using Json = nlohmann::ordered_json;

inline Json to_json(const Decomposition& d) {
  Json out;
  out["S"] = d.sparse_vertices();
  Json cliques = Json::array();
  for (std::size_t i = 0; i < d.clique_count(); ++i) {
    const Clique& c = d.clique(i);
    cliques.push_back({{"members", c.members},
                       {"a_D", c.avg_anti().to_string()},
                       {"e_D", c.avg_ext().to_string()},
                       {"inliers", classify_inliers(d, i)}});
  }
  out["cliques"] = std::move(cliques);
  return out;
}

/// φ and matched, one entry per vertex 1..n; ⊥ is null.
inline Json to_json(const ColoringState& s) {
  Json phi = Json::array();
  Json matched = Json::array();
  for (Vertex v = 1; v <= s.n(); ++v) {
    phi.push_back(s.colored(v) ? Json(s.color(v)) : Json(nullptr));
    matched.push_back(s.matched(v) != kNoVertex ? Json(s.matched(v)) : Json(nullptr));
  }
  return {{"phi", std::move(phi)}, {"matched", std::move(matched)}};
}

inline Json to_json(const Violation& v) {
  return {{"kind", to_string(v.kind)}, {"location", v.location}, {"details", v.details}};
}

inline Json to_json(const ViolationReport& report) {
  Json out = Json::array();
  for (const auto& v : report) out.push_back(to_json(v));
  return out;
}

inline Json to_json(const DecompositionReport& report) {
  Json out = Json::array();
  for (const auto& v : report.violations) {
    out.push_back({{"clause", to_string(v.clause)}, {"vertex", v.vertex}, {"clique", v.clique}, {"details", v.details}});
  }
  return out;
}

inline Json to_json(const CostMeter& m) {
  return {{"color_trials", m.color_trials},     {"class_scans", m.class_scans},
          {"palette_probes", m.palette_probes}, {"anti_edge_samples", m.anti_edge_samples},
          {"recolorings", m.recolorings},       {"uncolorings", m.uncolorings},
          {"fresh_work", m.fresh_work},         {"decomposition_work", m.decomposition_work}};
}

inline Json to_json(const FreshReport& r) {
  return {{"trial_count", r.trial_count},         {"sparse_trials", r.sparse_trials},
          {"one_shot_colored", r.one_shot_colored}, {"min_sparse_slack", r.min_sparse_slack},
          {"max_class_size", r.max_class_size},   {"matching_sizes", r.matching_sizes},
          {"work", r.work}};
}

}  // namespace dyncolor
