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

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "dyncolor/types.hpp"
#include "dyncolor/update.hpp"

namespace dyncolor {

// Trace format: a header line "n Δ", then one update per line, "+ u v" or
// "- u v". ASCII, single spaces, LF line endings.

struct TraceHeader {
  Vertex n = 0;
  std::uint32_t delta = 0;
  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::uint64_t parse_uint(std::string_view s, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value > 0xFFFFFFFFull) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace detail

/// Streams updates from a trace one line at a time.
class TraceReader {
 public:
  explicit TraceReader(std::istream& in) : in_(in) {
    std::string line;
    if (!next_line(line)) throw ParseError(1, "missing header");
    const auto f = detail::split_fields(line);
    if (f.size() != 2) throw ParseError(line_, "header must be 'n delta'");
    header_.n = static_cast<Vertex>(detail::parse_uint(f[0], line_, "vertex count"));
    header_.delta = static_cast<std::uint32_t>(detail::parse_uint(f[1], line_, "degree cap"));
  }

  const TraceHeader& header() const { return header_; }
  std::size_t line() const { return line_; }

  std::optional<Update> next() {
    std::string line;
    if (!next_line(line)) return std::nullopt;
    const auto f = detail::split_fields(line);
    if (f.size() != 3 || f[0].size() != 1 || (f[0][0] != '+' && f[0][0] != '-')) {
      throw ParseError(line_, "expected '+ u v' or '- u v', got '" + line + "'");
    }
    const auto u = static_cast<Vertex>(detail::parse_uint(f[1], line_, "vertex"));
    const auto v = static_cast<Vertex>(detail::parse_uint(f[2], line_, "vertex"));
    return f[0][0] == '+' ? Update::insert(u, v) : Update::remove(u, v);
  }

 private:
  bool next_line(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!detail::split_fields(line).empty()) return true;
    }
    return false;
  }

  std::istream& in_;
  std::size_t line_ = 0;
  TraceHeader header_;
};

inline void write_trace(std::ostream& out, const TraceHeader& header, const std::vector<Update>& stream) {
  out << header.n << ' ' << header.delta << '\n';
  for (const Update& u : stream) out << u.to_string() << '\n';
}

inline void record_trace(const std::vector<Update>& stream, const TraceHeader& header, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  write_trace(out, header, stream);
  if (!out) throw Error("write to '" + path + "' failed");
}

/// Reads a whole trace into memory.
inline std::vector<Update> replay_trace(const std::string& path, TraceHeader* header = nullptr) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open trace '" + path + "'");
  TraceReader reader(in);
  if (header) *header = reader.header();
  std::vector<Update> out;
  while (auto u = reader.next()) out.push_back(*u);
  return out;
}

}  // namespace dyncolor
