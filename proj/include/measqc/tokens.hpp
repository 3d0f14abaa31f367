// Copyright 2026 The measqc Authors
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

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "measqc/annotation.hpp"
#include "measqc/utf8.hpp"

namespace measqc {

struct Token {
  std::u32string text;
  Span span;
};

// Tokens are maximal runs of letters/digits; every other non-space
// character (°, %, µ, punctuation) is a token of its own.
inline std::vector<Token> tokenize(std::u32string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (utf8::is_space(s[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    if (utf8::is_alnum(s[i])) {
      while (j < s.size() && utf8::is_alnum(s[j])) ++j;
    }
    out.push_back({std::u32string(s.substr(i, j - i)), {i, j}});
    i = j;
  }
  return out;
}

inline std::vector<std::u32string> token_strings(std::string_view s) {
  std::vector<std::u32string> out;
  for (auto& t : tokenize(utf8::decode(s))) out.push_back(std::move(t.text));
  return out;
}

// Exact token-overlap counts; the basis of every token-level score.
struct TokenCounts {
  std::int64_t common = 0;
  std::int64_t predicted = 0;
  std::int64_t gold = 0;
};

inline TokenCounts token_counts(const std::vector<std::u32string>& pred,
                                const std::vector<std::u32string>& gold) {
  std::map<std::u32string, std::int64_t> bag;
  for (const auto& t : gold) ++bag[t];
  TokenCounts c{0, static_cast<std::int64_t>(pred.size()),
                static_cast<std::int64_t>(gold.size())};
  for (const auto& t : pred) {
    auto it = bag.find(t);
    if (it != bag.end() && it->second > 0) {
      --it->second;
      ++c.common;
    }
  }
  return c;
}

inline TokenCounts token_counts(std::string_view pred, std::string_view gold) {
  return token_counts(token_strings(pred), token_strings(gold));
}

// Exact rational. Scores are ratios of small token counts, so
// keeping them exact makes optimal-matching totals reproducible bit for bit.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t n, std::int64_t d) {
    if (d == 0) return {0, 1};
    std::int64_t g = std::gcd(n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const std::int64_t g = std::gcd(a.den, b.den);
    const __int128 den = static_cast<__int128>(a.den / g) * b.den;
    const __int128 num = static_cast<__int128>(a.num) * (b.den / g) +
                         static_cast<__int128>(b.num) * (a.den / g);
    return reduce(num, den);
  }

  friend Rational operator-(const Rational& a) { return {-a.num, a.den}; }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    return reduce(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }

  // Divisor must be nonzero.
  friend Rational operator/(const Rational& a, const Rational& b) {
    __int128 num = static_cast<__int128>(a.num) * b.den;
    __int128 den = static_cast<__int128>(a.den) * b.num;
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return reduce(num, den);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  static Rational reduce(__int128 num, __int128 den) {
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a == 0) a = 1;
    num /= a;
    den /= a;
    constexpr __int128 kMax = INT64_MAX;
    // Long sums of unrelated denominators can exceed 64 bits; round to the
    // nearest fraction over 2^52 in that case.
    if (num > kMax || den > kMax) {
      const long double v = static_cast<long double>(num) / static_cast<long double>(den);
      constexpr std::int64_t kScale = std::int64_t{1} << 52;
      return of(static_cast<std::int64_t>(v * kScale + 0.5L), kScale);
    }
    return {static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
  }
};

struct PRF {
  double precision = 0;
  double recall = 0;
  double f1 = 0;
};

inline Rational f1_rational(const TokenCounts& c) {
  if (c.predicted == 0 && c.gold == 0) return {1, 1};
  if (c.predicted + c.gold == 0) return {0, 1};
  return Rational::of(2 * c.common, c.predicted + c.gold);
}

inline double f1_from(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

// Token-level precision/recall/F1 of a predicted span text against a gold
// one, with multiset-intersection semantics.
inline PRF token_prf(std::string_view predicted, std::string_view gold) {
  const TokenCounts c = token_counts(predicted, gold);
  if (c.predicted == 0 && c.gold == 0) return {1, 1, 1};
  if (c.predicted == 0 || c.gold == 0) return {0, 0, 0};
  const double p = static_cast<double>(c.common) / static_cast<double>(c.predicted);
  const double r = static_cast<double>(c.common) / static_cast<double>(c.gold);
  return {p, r, f1_rational(c).value()};
}

}  // namespace measqc
