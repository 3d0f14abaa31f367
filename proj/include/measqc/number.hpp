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

// Numeral recognition: digit numerals (thousands separators, decimals,
// 1.2e3, 1.2×10^3, 1.2×10³, signs) and English cardinals below one
// thousand ("twenty-five", "three hundred and five").

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "measqc/error.hpp"
#include "measqc/utf8.hpp"

namespace measqc {

struct NumberMatch {
  std::size_t end = 0;  // one past the last consumed character
  double value = 0;
  bool explicit_sign = false;
};

namespace detail {

inline bool is_minus(char32_t c) { return c == U'-' || c == 0x2212; }

inline int superscript_digit(char32_t c) {
  switch (c) {
    case 0x2070: return 0;
    case 0x00B9: return 1;
    case 0x00B2: return 2;
    case 0x00B3: return 3;
    case 0x2074: return 4;
    case 0x2075: return 5;
    case 0x2076: return 6;
    case 0x2077: return 7;
    case 0x2078: return 8;
    case 0x2079: return 9;
    default: return -1;
  }
}

// Parses "^-3", "^3", "⁻³", "³" starting at p; returns end and exponent.
inline std::optional<std::pair<std::size_t, int>> scan_power(std::u32string_view s,
                                                             std::size_t p) {
  if (p < s.size() && s[p] == U'^') {
    std::size_t q = p + 1;
    bool neg = false;
    if (q < s.size() && (is_minus(s[q]) || s[q] == U'+')) {
      neg = is_minus(s[q]);
      ++q;
    }
    std::size_t d = q;
    int e = 0;
    while (q < s.size() && utf8::is_digit(s[q]) && q - d < 4) e = e * 10 + (s[q++] - U'0');
    if (q == d) return std::nullopt;
    return std::pair{q, neg ? -e : e};
  }
  std::size_t q = p;
  bool neg = false;
  if (q < s.size() && s[q] == 0x207B) {
    neg = true;
    ++q;
  }
  std::size_t d = q;
  int e = 0;
  while (q < s.size() && superscript_digit(s[q]) >= 0 && q - d < 4) {
    e = e * 10 + superscript_digit(s[q++]);
  }
  if (q == d) return std::nullopt;
  return std::pair{q, neg ? -e : e};
}

}  // namespace detail

// Longest digit numeral starting exactly at `pos`, or nullopt.
inline std::optional<NumberMatch> scan_numeral(std::u32string_view s, std::size_t pos) {
  std::size_t p = pos;
  std::string ascii;
  bool sign = false;
  if (p < s.size() && (detail::is_minus(s[p]) || s[p] == U'+')) {
    if (detail::is_minus(s[p])) ascii.push_back('-');
    sign = true;
    ++p;
  }
  const std::size_t int_start = p;
  while (p < s.size() && utf8::is_digit(s[p])) ascii.push_back(static_cast<char>(s[p++]));
  const std::size_t int_digits = p - int_start;
  // Thousands groups: 1,234,567 (exactly three digits after every comma).
  if (int_digits >= 1 && int_digits <= 3) {
    while (p + 3 < s.size() + 0 && s[p] == U',' && utf8::is_digit(s[p + 1]) &&
           utf8::is_digit(s[p + 2]) && utf8::is_digit(s[p + 3]) &&
           (p + 4 >= s.size() || !utf8::is_digit(s[p + 4]))) {
      for (int k = 1; k <= 3; ++k) ascii.push_back(static_cast<char>(s[p + k]));
      p += 4;
    }
  }
  bool has_fraction = false;
  if (p + 1 < s.size() && s[p] == U'.' && utf8::is_digit(s[p + 1])) {
    ascii.push_back('.');
    ++p;
    while (p < s.size() && utf8::is_digit(s[p])) ascii.push_back(static_cast<char>(s[p++]));
    has_fraction = true;
  }
  if (int_digits == 0 && !has_fraction) return std::nullopt;

  int exponent = 0;
  bool has_exponent = false;
  // 1.2e3 / 1.2E-3
  if (p < s.size() && (s[p] == U'e' || s[p] == U'E')) {
    std::size_t q = p + 1;
    bool neg = false;
    if (q < s.size() && (detail::is_minus(s[q]) || s[q] == U'+')) {
      neg = detail::is_minus(s[q]);
      ++q;
    }
    std::size_t d = q;
    int e = 0;
    while (q < s.size() && utf8::is_digit(s[q]) && q - d < 4) e = e * 10 + (s[q++] - U'0');
    if (q > d && (q >= s.size() || !utf8::is_alnum(s[q]))) {
      exponent = neg ? -e : e;
      has_exponent = true;
      p = q;
    }
  }
  // 1.2×10^3, 1.2 x 10^-3, 1.2·10³
  if (!has_exponent) {
    std::size_t q = p;
    while (q < s.size() && s[q] == U' ') ++q;
    if (q < s.size() && (s[q] == 0x00D7 || s[q] == U'x' || s[q] == U'X' || s[q] == 0x00B7 ||
                         s[q] == U'*' || s[q] == 0x22C5)) {
      ++q;
      while (q < s.size() && s[q] == U' ') ++q;
      if (q + 1 < s.size() && s[q] == U'1' && s[q + 1] == U'0') {
        if (auto pw = detail::scan_power(s, q + 2)) {
          exponent = pw->second;
          has_exponent = true;
          p = pw->first;
        }
      }
    }
  }
  // Bare power of ten: 10^3, 10⁻³
  if (!has_exponent && ascii == (sign && ascii[0] == '-' ? "-10" : "10")) {
    if (auto pw = detail::scan_power(s, p)) {
      ascii = ascii[0] == '-' ? "-1" : "1";
      exponent = pw->second;
      has_exponent = true;
      p = pw->first;
    }
  }
  if (has_exponent) ascii += "e" + std::to_string(exponent);

  double value = 0;
  auto [ptr, ec] = std::from_chars(ascii.data(), ascii.data() + ascii.size(), value);
  if (ec != std::errc() || ptr != ascii.data() + ascii.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return NumberMatch{p, value, sign};
}

namespace detail {

struct CardinalWord {
  std::u32string_view word;
  int value;
  enum Kind { Unit, Teen, Ten, Hundred } kind;
};

inline constexpr std::array<CardinalWord, 29> kCardinals = {{
    {U"zero", 0, CardinalWord::Unit},       {U"one", 1, CardinalWord::Unit},
    {U"two", 2, CardinalWord::Unit},        {U"three", 3, CardinalWord::Unit},
    {U"four", 4, CardinalWord::Unit},       {U"five", 5, CardinalWord::Unit},
    {U"six", 6, CardinalWord::Unit},        {U"seven", 7, CardinalWord::Unit},
    {U"eight", 8, CardinalWord::Unit},      {U"nine", 9, CardinalWord::Unit},
    {U"ten", 10, CardinalWord::Teen},       {U"eleven", 11, CardinalWord::Teen},
    {U"twelve", 12, CardinalWord::Teen},    {U"thirteen", 13, CardinalWord::Teen},
    {U"fourteen", 14, CardinalWord::Teen},  {U"fifteen", 15, CardinalWord::Teen},
    {U"sixteen", 16, CardinalWord::Teen},   {U"seventeen", 17, CardinalWord::Teen},
    {U"eighteen", 18, CardinalWord::Teen},  {U"nineteen", 19, CardinalWord::Teen},
    {U"twenty", 20, CardinalWord::Ten},     {U"thirty", 30, CardinalWord::Ten},
    {U"forty", 40, CardinalWord::Ten},      {U"fifty", 50, CardinalWord::Ten},
    {U"sixty", 60, CardinalWord::Ten},      {U"seventy", 70, CardinalWord::Ten},
    {U"eighty", 80, CardinalWord::Ten},     {U"ninety", 90, CardinalWord::Ten},
    {U"hundred", 100, CardinalWord::Hundred},
}};

struct Word {
  std::u32string text;  // lowercased
  std::size_t start;
  std::size_t end;
  char32_t joiner;  // separator before this word (0 for the first)
};

inline const CardinalWord* cardinal(std::u32string_view w) {
  for (const auto& c : kCardinals) {
    if (c.word == w) return &c;
  }
  return nullptr;
}

// Value of words[0..n) if they form a cardinal below 1000, else -1.
inline int cardinal_value(const std::vector<Word>& words, std::size_t n) {
  std::size_t i = 0;
  auto below_100 = [&](int& out) -> bool {
    if (i >= n) return false;
    const auto* c = cardinal(words[i].text);
    if (!c || c->kind == CardinalWord::Hundred) return false;
    out = c->value;
    ++i;
    if (c->kind == CardinalWord::Ten && i < n) {
      const auto* u = cardinal(words[i].text);
      if (u && u->kind == CardinalWord::Unit && u->value > 0) {
        out += u->value;
        ++i;
      }
    }
    return true;
  };
  int total = 0;
  if (!below_100(total)) return -1;
  if (i < n && words[i].text == U"hundred") {
    if (total < 1 || total > 9) return -1;
    total *= 100;
    ++i;
    if (i < n && words[i].text == U"and") ++i;
    if (i < n) {
      int rest = 0;
      if (!below_100(rest) || rest == 0) return -1;
      total += rest;
    }
  }
  return i == n ? total : -1;
}

}  // namespace detail

// Longest spelled-out cardinal starting exactly at `pos`.
inline std::optional<NumberMatch> scan_cardinal(std::u32string_view s, std::size_t pos) {
  std::vector<detail::Word> words;
  std::size_t p = pos;
  char32_t joiner = 0;
  while (p < s.size() && words.size() < 6) {
    std::size_t q = p;
    while (q < s.size() && utf8::is_ascii_alpha(s[q])) ++q;
    if (q == p) break;
    auto w = utf8::ascii_lower(s.substr(p, q - p));
    if (!detail::cardinal(w) && w != U"and") break;
    words.push_back({w, p, q, joiner});
    if (q < s.size() && (s[q] == U' ' || s[q] == U'-')) {
      joiner = s[q];
      p = q + 1;
    } else {
      break;
    }
  }
  for (std::size_t n = words.size(); n > 0; --n) {
    // A trailing "and" never belongs to the numeral; tens-units joins may use a hyphen.
    if (words[n - 1].text == U"and") continue;
    bool joins_ok = true;
    for (std::size_t k = 1; k < n; ++k) {
      if (words[k].joiner == U'-' && !(detail::cardinal(words[k - 1].text) &&
                                       detail::cardinal(words[k - 1].text)->kind ==
                                           detail::CardinalWord::Ten)) {
        joins_ok = false;
      }
    }
    if (!joins_ok) continue;
    const int v = detail::cardinal_value(words, n);
    if (v >= 0) {
      const std::size_t end = words[n - 1].end;
      if (end < s.size() && utf8::is_alnum(s[end])) return std::nullopt;
      return NumberMatch{end, static_cast<double>(v), false};
    }
  }
  return std::nullopt;
}

inline std::optional<double> try_normalize_number(std::string_view token) {
  const std::u32string s = utf8::decode(utf8::trim(token));
  if (s.empty()) return std::nullopt;
  if (auto m = scan_numeral(s, 0); m && m->end == s.size()) return m->value;
  if (auto m = scan_cardinal(s, 0); m && m->end == s.size()) return m->value;
  return std::nullopt;
}

// Decimal value of a numeral token; throws ParseError when it is not one.
inline double normalize_number(std::string_view token) {
  if (auto v = try_normalize_number(token)) return *v;
  throw ParseError("not a numeral: '" + std::string(token) + "'");
}

}  // namespace measqc
