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
#include <deque>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dyncolor {

/// Counter-based generator: the i-th output is a pure function of
/// (key, i), so a stream can be split or replayed without hidden state.
/// Uses the SplitMix64 finalizer as the mixing function.
///
/// Tests can queue forced values that are returned by the next uniform()
/// draws before the stream resumes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next() { return mix(key_ + (++counter_) * kGolden); }

  /// Uniform in [0, bound). Lemire's nearly-divisionless method.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: empty range");
    __uint128_t m = static_cast<__uint128_t>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (low < threshold) {
        m = static_cast<__uint128_t>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform in [lo, hi], honoring forced values first.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    if (!forced_.empty()) {
      const std::uint64_t v = forced_.front();
      forced_.pop_front();
      if (v < lo || v > hi) throw std::logic_error("Rng: forced value outside requested range");
      return v;
    }
    return lo + below(hi - lo + 1);
  }

  /// True with probability num/den.
  bool bernoulli(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  /// An independent child stream.
  Rng split(std::uint64_t stream) const {
    Rng child;
    child.key_ = mix(key_ ^ mix(stream * kGolden + 0x8cb92ba72f3d8dd7ULL));
    return child;
  }

  void force(std::uint64_t value) { forced_.push_back(value); }
  void clear_forced() { forced_.clear(); }
  std::size_t forced_pending() const { return forced_.size(); }

  std::uint64_t counter() const { return counter_; }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  std::deque<std::uint64_t> forced_;
};

}  // namespace dyncolor
