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

namespace dyncolor {

/// Operation counters. work() is the amortized-cost measurand; fresh and
/// decomposition work are accumulated separately at phase boundaries.
struct CostMeter {
  std::uint64_t color_trials = 0;       // sampled candidate colors
  std::uint64_t class_scans = 0;        // vertices visited in Φ[χ], E(v) or N(v) scans
  std::uint64_t palette_probes = 0;     // membership checks against a palette
  std::uint64_t anti_edge_samples = 0;  // samples drawn from F_D
  std::uint64_t recolorings = 0;        // set_color with a color
  std::uint64_t uncolorings = 0;        // set_color with ⊥
  std::uint64_t fresh_work = 0;
  std::uint64_t decomposition_work = 0;

  std::uint64_t work() const {
    return color_trials + class_scans + palette_probes + anti_edge_samples + recolorings + uncolorings;
  }

  CostMeter& operator+=(const CostMeter& o) {
    color_trials += o.color_trials;
    class_scans += o.class_scans;
    palette_probes += o.palette_probes;
    anti_edge_samples += o.anti_edge_samples;
    recolorings += o.recolorings;
    uncolorings += o.uncolorings;
    fresh_work += o.fresh_work;
    decomposition_work += o.decomposition_work;
    return *this;
  }

  friend CostMeter operator-(CostMeter a, const CostMeter& b) {
    a.color_trials -= b.color_trials;
    a.class_scans -= b.class_scans;
    a.palette_probes -= b.palette_probes;
    a.anti_edge_samples -= b.anti_edge_samples;
    a.recolorings -= b.recolorings;
    a.uncolorings -= b.uncolorings;
    a.fresh_work -= b.fresh_work;
    a.decomposition_work -= b.decomposition_work;
    return a;
  }

  friend bool operator==(const CostMeter&, const CostMeter&) = default;
};

/// What one engine step cost and what happened during it.
struct CostReport {
  CostMeter cost;                      // handler counters plus any fresh/decomposition work
  std::uint32_t sparse_recolors = 0;   // colorings of S vertices by the handler
  std::uint32_t max_steal_depth = 0;   // nested steals below the handler's first recoloring
  bool phase_started = false;          // a fresh coloring ran at the end of this step
  bool phase_restart = false;          // ... because a retry cap was exhausted
  std::uint32_t fresh_retries = 0;     // re-seeded fresh attempts

  std::uint64_t total_work() const { return cost.work() + cost.fresh_work; }
};

}  // namespace dyncolor
