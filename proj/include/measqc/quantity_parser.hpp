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

// Rule-based recognition and validation of quantity expressions.
//
// A quantity is a numeral (digits or a spelled-out cardinal) with an
// optional unit from the lexicon, optional range continuation
// ("10-20 mg", "from 5 to 10 K", "between 2 and 3 h"), optional tolerance
// ("5 ± 0.2 mm") and optional leading cue words ("up to", "approximately",
// "~", "at least", "mean of"). Numerals inside out-of-scope matches (figure
// labels, reference numerals, "4S"-style names) are never quantities.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "measqc/annotation.hpp"
#include "measqc/number.hpp"
#include "measqc/scope.hpp"
#include "measqc/units.hpp"
#include "measqc/utf8.hpp"

namespace measqc {

enum class QuantityKind { Arabic, NumericWord, Time, Change, Formula };

inline std::string_view to_string(QuantityKind k) {
  switch (k) {
    case QuantityKind::Arabic: return "arabic";
    case QuantityKind::NumericWord: return "numeric-word";
    case QuantityKind::Time: return "time";
    case QuantityKind::Change: return "change";
    case QuantityKind::Formula: return "formula";
  }
  return "?";
}

// Stated bounds of a range; an open range ("up to 798") leaves one absent.
struct ValueRange {
  std::optional<double> low;
  std::optional<double> high;

  friend bool operator==(const ValueRange&, const ValueRange&) = default;
};

struct ParsedQuantity {
  std::string surface;
  Span span;
  double value = 0;  // the single value, the stated bound, or a range's low end
  std::optional<ValueRange> range;
  std::optional<double> tolerance;
  std::optional<std::string> unit;  // canonical unit name
  std::string unit_surface;         // verbatim, a substring of `surface`
  std::string unit_dimension;
  std::vector<std::string> modifiers;
  QuantityKind kind = QuantityKind::Arabic;

  friend bool operator==(const ParsedQuantity&, const ParsedQuantity&) = default;
};

namespace detail {

struct PrefixCue {
  std::u32string_view text;  // lowercase
  std::string_view modifier;
  enum Bound { None, Upper, Lower } bound;
  bool symbol;  // may touch the numeral without whitespace
};

inline constexpr std::array<PrefixCue, 36> kPrefixCues = {{
    {U"no more than", "IsRange", PrefixCue::Upper, false},
    {U"not more than", "IsRange", PrefixCue::Upper, false},
    {U"no less than", "IsRange", PrefixCue::Lower, false},
    {U"greater than", "IsRange", PrefixCue::Lower, false},
    {U"higher than", "IsRange", PrefixCue::Lower, false},
    {U"in excess of", "IsRange", PrefixCue::Lower, false},
    {U"approximately", "IsApproximate", PrefixCue::None, false},
    {U"lower than", "IsRange", PrefixCue::Upper, false},
    {U"fewer than", "IsRange", PrefixCue::Upper, false},
    {U"less than", "IsRange", PrefixCue::Upper, false},
    {U"more than", "IsRange", PrefixCue::Lower, false},
    {U"exceeding", "IsRange", PrefixCue::Lower, false},
    {U"average of", "IsMean", PrefixCue::None, false},
    {U"median of", "IsMedian", PrefixCue::None, false},
    {U"at least", "IsRange", PrefixCue::Lower, false},
    {U"at most", "IsRange", PrefixCue::Upper, false},
    {U"mean of", "IsMean", PrefixCue::None, false},
    {U"roughly", "IsApproximate", PrefixCue::None, false},
    {U"approx.", "IsApproximate", PrefixCue::None, false},
    {U"around", "IsApproximate", PrefixCue::None, false},
    {U"nearly", "IsApproximate", PrefixCue::None, false},
    {U"almost", "IsApproximate", PrefixCue::None, false},
    {U"circa", "IsApproximate", PrefixCue::None, false},
    {U"up to", "IsRange", PrefixCue::Upper, false},
    {U"above", "IsRange", PrefixCue::Lower, false},
    {U"below", "IsRange", PrefixCue::Upper, false},
    {U"about", "IsApproximate", PrefixCue::None, false},
    {U"ca.", "IsApproximate", PrefixCue::None, false},
    {U"<=", "IsRange", PrefixCue::Upper, true},
    {U">=", "IsRange", PrefixCue::Lower, true},
    {U"≤", "IsRange", PrefixCue::Upper, true},
    {U"≥", "IsRange", PrefixCue::Lower, true},
    {U"<", "IsRange", PrefixCue::Upper, true},
    {U">", "IsRange", PrefixCue::Lower, true},
    {U"~", "IsApproximate", PrefixCue::None, true},
    {U"≈", "IsApproximate", PrefixCue::None, true},
}};

inline constexpr std::array<std::u32string_view, 13> kChangeWords = {
    U"by",        U"increased", U"decreased", U"increase", U"decrease",
    U"increases", U"decreases", U"rose",      U"fell",     U"dropped",
    U"change",    U"changed",   U"shifted",
};

inline bool is_dash(char32_t c) {
  return c == U'-' || c == 0x2010 || c == 0x2012 || c == 0x2013 || c == 0x2014;
}

inline bool is_inline_space(char32_t c) { return utf8::is_space(c) && c != U'\n'; }

inline std::size_t skip_spaces(std::u32string_view t, std::size_t p) {
  while (p < t.size() && is_inline_space(t[p])) ++p;
  return p;
}

inline bool word_at(std::u32string_view t, std::size_t p, std::u32string_view w) {
  if (p + w.size() > t.size()) return false;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (utf8::ascii_lower(t[p + k]) != w[k]) return false;
  }
  const std::size_t e = p + w.size();
  return e >= t.size() || !utf8::is_alnum(t[e]);
}

// Start of the word ending right before `p` (after trailing spaces), or npos.
inline std::optional<std::pair<std::size_t, std::size_t>> previous_word(std::u32string_view t,
                                                                        std::size_t p) {
  std::size_t e = p;
  while (e > 0 && is_inline_space(t[e - 1])) --e;
  if (e == p && p > 0) return std::nullopt;  // must be whitespace-separated
  std::size_t s = e;
  while (s > 0 && utf8::is_alnum(t[s - 1])) --s;
  if (s == e) return std::nullopt;
  return std::pair{s, e};
}

}  // namespace detail

class QuantityParser {
 public:
  QuantityParser() : QuantityParser(UnitLexicon::builtin(), ScopePatternTable::builtin()) {}
  QuantityParser(UnitLexicon units, ScopePatternTable patterns)
      : units_(std::move(units)), patterns_(std::move(patterns)) {}

  const UnitLexicon& units() const { return units_; }
  const ScopePatternTable& patterns() const { return patterns_; }

  std::vector<ScopeHit> out_of_scope_hits(std::string_view candidate) const {
    return patterns_.hits(candidate, units_);
  }

  // Non-overlapping quantities sorted by start offset.
  std::vector<ParsedQuantity> extract_quantities(std::string_view text) const {
    const std::u32string t = utf8::decode(text);
    std::vector<Span> excluded;
    for (const auto& h : out_of_scope_hits(text)) excluded.push_back(h.span);

    std::vector<ParsedQuantity> out;
    std::size_t floor = 0;  // nothing may start before the previous result's end
    std::size_t i = 0;
    while (i < t.size()) {
      const bool word_start = i == 0 || !utf8::is_alnum(t[i - 1]);
      if (!word_start) {
        ++i;
        continue;
      }
      if (auto ex = std::find_if(excluded.begin(), excluded.end(),
                                 [&](const Span& s) { return s.start <= i && i < s.end; });
          ex != excluded.end()) {
        i = ex->end;
        continue;
      }
      const bool signed_digit = (detail::is_minus(t[i]) || t[i] == U'+') && i + 1 < t.size() &&
                                utf8::is_digit(t[i + 1]);
      if (utf8::is_digit(t[i]) || signed_digit) {
        // Hyphenated names such as "COVID-19" or "Ti-6".
        if (i >= 2 && detail::is_dash(t[i - 1]) && utf8::is_letter(t[i - 2])) {
          i = skip_alnum(t, i + 1);
          continue;
        }
        auto m = scan_numeral(t, i);
        if (!m) {
          ++i;
          continue;
        }
        std::size_t resume = m->end;
        if (auto q = complete(t, i, *m, false, floor, &resume)) {
          floor = q->span.end;
          i = q->span.end;
          out.push_back(std::move(*q));
        } else {
          i = std::max(resume, i + 1);
        }
        continue;
      }
      if (utf8::is_ascii_alpha(t[i])) {
        if (auto m = scan_cardinal(t, i)) {
          std::size_t resume = m->end;
          if (auto q = complete(t, i, *m, true, floor, &resume)) {
            floor = q->span.end;
            i = q->span.end;
            out.push_back(std::move(*q));
            continue;
          }
        }
        i = skip_alnum(t, i);
        continue;
      }
      ++i;
    }
    return out;
  }

  // The quantity expressed by a candidate string, or nullopt when it holds
  // no valid quantity or is an out-of-scope numeral.
  std::optional<ParsedQuantity> validate_span(std::string_view candidate) const {
    if (utf8::trim(candidate).empty()) return std::nullopt;
    if (!out_of_scope_hits(candidate).empty()) return std::nullopt;
    auto found = extract_quantities(candidate);
    if (!found.empty()) {
      auto best = std::max_element(found.begin(), found.end(),
                                   [](const ParsedQuantity& a, const ParsedQuantity& b) {
                                     return a.span.length() < b.span.length();
                                   });
      return *best;
    }
    // A bare numeral with no unit ("five", "0.25") is still a quantity.
    const std::string trimmed = utf8::trim(candidate);
    if (auto v = try_normalize_number(trimmed)) {
      ParsedQuantity q;
      q.surface = trimmed;
      const std::u32string c = utf8::decode(candidate);
      std::size_t s = 0;
      while (s < c.size() && utf8::is_space(c[s])) ++s;
      q.span = {s, s + utf8::length(trimmed)};
      q.value = *v;
      q.kind = utf8::is_digit(utf8::decode(trimmed).back()) ? QuantityKind::Arabic
                                                             : QuantityKind::NumericWord;
      return q;
    }
    return std::nullopt;
  }

 private:
  struct UnitHit {
    std::size_t start;
    std::size_t end;
    std::string canonical;
    std::string dimension;
  };

  static std::size_t skip_alnum(std::u32string_view t, std::size_t p) {
    while (p < t.size() && utf8::is_alnum(t[p])) ++p;
    return p;
  }

  std::optional<UnitHit> unit_after(std::u32string_view t, std::size_t p) const {
    const std::size_t q = detail::skip_spaces(t, p);
    auto m = units_.match(t, q);
    if (!m) return std::nullopt;
    UnitHit h{q, q + m->length, m->entry->canonical, m->entry->dimension};
    // Compound "a/b" units not listed in the lexicon.
    if (h.end + 1 < t.size() && t[h.end] == U'/') {
      if (auto m2 = units_.match(t, h.end + 1)) {
        h.canonical += " per " + m2->entry->canonical;
        h.dimension += "/" + m2->entry->dimension;
        h.end += 1 + m2->length;
      }
    }
    return h;
  }

  // Grows a numeral at [start, m.end) into a full quantity. Returns nullopt
  // when the numeral is not a quantity; `resume` then tells the scanner
  // where to continue.
  std::optional<ParsedQuantity> complete(std::u32string_view t, std::size_t start,
                                         const NumberMatch& m, bool spelled, std::size_t floor,
                                         std::size_t* resume) const {
    std::size_t end = m.end;
    // Letters glued to the digits must form a unit ("10mg"); otherwise the
    // token is an ordinal or a name ("5th", "3a").
    if (!spelled && end < t.size() && utf8::is_letter(t[end]) && !units_.match(t, end)) {
      *resume = skip_alnum(t, end);
      return std::nullopt;
    }
    std::optional<UnitHit> unit = unit_after(t, end);
    if (spelled && !unit) return std::nullopt;
    if (unit) end = unit->end;

    std::vector<std::string> mods;
    auto add_mod = [&](std::string_view mod) {
      if (std::find(mods.begin(), mods.end(), mod) == mods.end()) mods.emplace_back(mod);
    };
    ParsedQuantity q;
    q.value = m.value;
    std::size_t qstart = start;

    // Tolerance: 5 ± 0.2 mm
    {
      std::size_t p = detail::skip_spaces(t, end);
      std::size_t after = std::u32string_view::npos;
      if (p < t.size() && t[p] == 0x00B1) {
        after = p + 1;
      } else if (p + 2 < t.size() && t[p] == U'+' && (t[p + 1] == U'/' || t[p + 1] == U'-') &&
                 (t[p + 2] == U'-' || utf8::is_space(t[p + 2]) || utf8::is_digit(t[p + 2]))) {
        after = t[p + 1] == U'/' ? p + 3 : p + 2;
      }
      if (after != std::u32string_view::npos) {
        const std::size_t y = detail::skip_spaces(t, after);
        if (auto tol = scan_numeral(t, y);
            tol && !tol->explicit_sign &&
            (tol->end >= t.size() || !utf8::is_letter(t[tol->end]) || units_.match(t, tol->end))) {
          q.tolerance = tol->value;
          end = tol->end;
          if (auto u2 = unit_after(t, end); u2 && (!unit || u2->dimension == unit->dimension)) {
            unit = u2;
            end = u2->end;
          }
          add_mod("HasTolerance");
        }
      }
    }

    // Range continuation.
    std::optional<std::pair<std::size_t, std::size_t>> before = detail::previous_word(t, start);
    std::u32string prev_word;
    if (before) prev_word = utf8::ascii_lower(t.substr(before->first, before->second - before->first));
    if (!q.tolerance) {
      std::size_t p = detail::skip_spaces(t, end);
      std::size_t after = std::u32string_view::npos;
      bool needs_between = false;
      if (p < t.size() && detail::is_dash(t[p])) {
        after = p + 1;
      } else if (detail::word_at(t, p, U"to")) {
        after = p + 2;
      } else if (detail::word_at(t, p, U"and")) {
        after = p + 3;
        needs_between = true;
      }
      const bool between = prev_word == U"between";
      const bool from = prev_word == U"from";
      if (after != std::u32string_view::npos && (!needs_between || between)) {
        const std::size_t y = detail::skip_spaces(t, after);
        std::optional<NumberMatch> hi;
        if (y < t.size() && (utf8::is_digit(t[y]) ||
                             ((detail::is_minus(t[y]) || t[y] == U'+') && y != after))) {
          hi = scan_numeral(t, y);
        } else if (spelled) {
          hi = scan_cardinal(t, y);
        }
        if (hi && hi->end < t.size() && utf8::is_letter(t[hi->end]) &&
            !units_.match(t, hi->end)) {
          hi.reset();
        }
        if (hi) {
          auto unit_hi = unit_after(t, hi->end);
          const bool units_agree =
              !unit || (unit_hi && unit_hi->dimension == unit->dimension);
          if (units_agree && (!spelled || unit || unit_hi)) {
            q.range = ValueRange{m.value, hi->value};
            end = unit_hi ? unit_hi->end : hi->end;
            if (unit_hi) unit = unit_hi;
            if ((between || from) && before->first >= floor) qstart = before->first;
            add_mod("IsRange");
          }
        }
      }
    }
    if (spelled && !unit) return std::nullopt;

    // Leading cue words, at most two ("up to approximately 5 K").
    std::vector<std::string> cue_mods;
    for (int round = 0; round < 2; ++round) {
      std::size_t e = qstart;
      while (e > floor && detail::is_inline_space(t[e - 1])) --e;
      const bool spaced = e < qstart;
      bool matched = false;
      for (const auto& cue : detail::kPrefixCues) {
        if (!cue.symbol && !spaced) continue;
        if (e < cue.text.size() || e - cue.text.size() < floor) continue;
        const std::size_t s = e - cue.text.size();
        bool eq = true;
        for (std::size_t k = 0; k < cue.text.size() && eq; ++k) {
          eq = utf8::ascii_lower(t[s + k]) == cue.text[k];
        }
        if (!eq) continue;
        if (!cue.symbol && s > 0 && utf8::is_alnum(t[s - 1])) continue;
        qstart = s;
        cue_mods.insert(cue_mods.begin(), std::string(cue.modifier));
        if (!q.range && cue.bound == detail::PrefixCue::Upper) q.range = ValueRange{std::nullopt, m.value};
        if (!q.range && cue.bound == detail::PrefixCue::Lower) q.range = ValueRange{m.value, std::nullopt};
        matched = true;
        break;
      }
      if (!matched) break;
    }
    for (auto it = cue_mods.rbegin(); it != cue_mods.rend(); ++it) {
      if (std::find(mods.begin(), mods.end(), *it) == mods.end()) mods.insert(mods.begin(), *it);
    }

    q.span = {qstart, end};
    q.surface = utf8::encode(t.substr(qstart, end - qstart));
    q.modifiers = std::move(mods);
    if (unit) {
      q.unit = unit->canonical;
      q.unit_surface = utf8::encode(t.substr(unit->start, unit->end - unit->start));
      q.unit_dimension = unit->dimension;
    }

    std::size_t look = qstart;
    while (look > 0 && detail::is_inline_space(t[look - 1])) --look;
    const auto kw = detail::previous_word(t, qstart);
    std::u32string kw_text;
    if (kw) kw_text = utf8::ascii_lower(t.substr(kw->first, kw->second - kw->first));
    if (spelled) {
      q.kind = QuantityKind::NumericWord;
    } else if (look > 0 && t[look - 1] == U'=') {
      q.kind = QuantityKind::Formula;
    } else if (m.explicit_sign && t[start] == U'+') {
      q.kind = QuantityKind::Change;
    } else if (std::find(detail::kChangeWords.begin(), detail::kChangeWords.end(), kw_text) !=
               detail::kChangeWords.end()) {
      q.kind = QuantityKind::Change;
    } else if (q.unit_dimension == "time") {
      q.kind = QuantityKind::Time;
    }
    return q;
  }

  UnitLexicon units_;
  ScopePatternTable patterns_;
};

inline const QuantityParser& default_parser() {
  static const QuantityParser parser;
  return parser;
}

inline std::vector<ParsedQuantity> extract_quantities(std::string_view text) {
  return default_parser().extract_quantities(text);
}

inline std::optional<ParsedQuantity> validate_span(std::string_view candidate) {
  return default_parser().validate_span(candidate);
}

inline std::vector<ScopeHit> out_of_scope_hits(std::string_view candidate) {
  return default_parser().out_of_scope_hits(candidate);
}

}  // namespace measqc
