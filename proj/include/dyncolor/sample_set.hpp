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

#include <cstddef>
#include <functional>
#include <stdexcept>

#include <ext/pb_ds/assoc_container.hpp>
#include <ext/pb_ds/tree_policy.hpp>

namespace dyncolor {

/// Ordered set with O(log n) insert, erase, membership, rank lookup and
/// uniform sampling. Backed by libstdc++'s order-statistics red-black tree.
template <class T>
class OrderedSampleSet {
  using Tree = __gnu_pbds::tree<T, __gnu_pbds::null_type, std::less<T>, __gnu_pbds::rb_tree_tag,
                                __gnu_pbds::tree_order_statistics_node_update>;

 public:
  using const_iterator = typename Tree::const_iterator;

  bool insert(const T& value) { return tree_.insert(value).second; }
  bool erase(const T& value) { return tree_.erase(value) > 0; }
  bool contains(const T& value) const { return tree_.find(value) != tree_.end(); }
  std::size_t size() const { return tree_.size(); }
  bool empty() const { return tree_.empty(); }
  void clear() { tree_.clear(); }

  /// The k-th smallest element, 0-based.
  const T& nth(std::size_t k) const {
    if (k >= tree_.size()) throw std::out_of_range("OrderedSampleSet::nth");
    return *tree_.find_by_order(k);
  }

  template <class Rng>
  const T& sample(Rng& rng) const {
    if (tree_.empty()) throw std::out_of_range("OrderedSampleSet::sample on empty set");
    return nth(rng.uniform(0, tree_.size() - 1));
  }

  const_iterator begin() const { return tree_.begin(); }
  const_iterator end() const { return tree_.end(); }

  friend bool operator==(const OrderedSampleSet& a, const OrderedSampleSet& b) {
    if (a.size() != b.size()) return false;
    auto it = b.begin();
    for (const T& v : a) {
      if (!(v == *it)) return false;
      ++it;
    }
    return true;
  }

 private:
  Tree tree_;
};

}  // namespace dyncolor
