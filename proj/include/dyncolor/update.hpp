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

#include <string>

#include "dyncolor/types.hpp"

namespace dyncolor {

enum class UpdateOp : char { insert = '+', remove = '-' };

struct Update {
  UpdateOp op = UpdateOp::insert;
  Vertex u = 0;
  Vertex v = 0;

  static Update insert(Vertex u, Vertex v) { return {UpdateOp::insert, u, v}; }
  static Update remove(Vertex u, Vertex v) { return {UpdateOp::remove, u, v}; }

  bool is_insert() const { return op == UpdateOp::insert; }

  std::string to_string() const {
    return std::string(1, static_cast<char>(op)) + ' ' + std::to_string(u) + ' ' + std::to_string(v);
  }

  friend bool operator==(const Update&, const Update&) = default;
};

}  // namespace dyncolor
