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

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dyncolor {

/// Vertices are numbered 1..n; 0 is reserved for "no vertex".
using Vertex = std::uint32_t;
/// Colors are numbered 1..Δ+1; 0 is reserved for "uncolored".
using Color = std::uint32_t;

inline constexpr Vertex kNoVertex = 0;
inline constexpr Color kNoColor = 0;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidVertex : public Error {
 public:
  using Error::Error;
};
class DegreeCapExceeded : public Error {
 public:
  using Error::Error;
};
class DuplicateEdge : public Error {
 public:
  using Error::Error;
};
class MissingEdge : public Error {
 public:
  using Error::Error;
};
class ColorOutOfRange : public Error {
 public:
  using Error::Error;
};
class DecompositionFailed : public Error {
 public:
  using Error::Error;
};

// A bounded retry loop ran dry mid-phase. The engine answers with a fresh
// phase.
class PhaseRestart : public Error {
 public:
  using Error::Error;
};
class InlierPaletteEmpty : public PhaseRestart {
 public:
  using PhaseRestart::PhaseRestart;
};

class FreshFailed : public Error {
 public:
  using Error::Error;
};
class PaletteExhausted : public FreshFailed {
 public:
  using FreshFailed::FreshFailed;
};

// Unrecoverable: fresh coloring failed even after re-seeding.
class EngineFailure : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Exact rational with a positive, reduced denominator.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  /// Largest integer ≤ value.
  constexpr std::int64_t floor() const {
    std::int64_t q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend constexpr bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend constexpr std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128_t lhs = static_cast<__int128_t>(a.num_) * b.den_;
    const __int128_t rhs = static_cast<__int128_t>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  friend constexpr Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend constexpr Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace dyncolor
