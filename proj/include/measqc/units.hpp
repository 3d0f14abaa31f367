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
#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "measqc/default_data.hpp"
#include "measqc/error.hpp"
#include "measqc/utf8.hpp"

namespace measqc {

struct UnitEntry {
  std::u32string surface;
  std::string canonical;
  std::string dimension;
  // Spelled-out names ("minutes", "kelvin") match case-insensitively;
  // symbols ("mM", "MPa") must match exactly.
  bool spelled = false;
};

struct UnitMatch {
  const UnitEntry* entry = nullptr;
  std::size_t length = 0;  // scalar values consumed
};

// Surface form -> canonical unit + dimension, with longest-match lookup.
class UnitLexicon {
 public:
  UnitLexicon() = default;

  // Lines: surface<TAB>canonical<TAB>dimension. '#' starts a comment line.
  static UnitLexicon parse(std::istream& in) {
    UnitLexicon lex;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      auto cols = utf8::split(line, '\t');
      if (cols.size() != 3 || cols[0].empty() || cols[1].empty() || cols[2].empty()) {
        throw ParseError("unit lexicon entry needs surface, canonical and dimension", line_no);
      }
      lex.add(cols[0], cols[1], cols[2]);
    }
    return lex;
  }

  static UnitLexicon parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
  }

  static const UnitLexicon& builtin() {
    static const UnitLexicon lex = parse(data::kUnitLexicon);
    return lex;
  }

  void add(std::string_view surface, std::string canonical, std::string dimension) {
    UnitEntry e;
    e.surface = utf8::decode(surface);
    e.canonical = std::move(canonical);
    e.dimension = std::move(dimension);
    e.spelled = e.surface.size() >= 4 &&
                std::all_of(e.surface.begin(), e.surface.end(), [](char32_t c) {
                  return (c >= U'a' && c <= U'z') || c == U' ';
                });
    if (e.spelled) e.surface = utf8::ascii_lower(e.surface);
    auto pos = std::find_if(entries_.begin(), entries_.end(),
                            [&](const UnitEntry& x) { return x.surface == e.surface; });
    if (pos != entries_.end()) {
      *pos = std::move(e);
    } else {
      entries_.push_back(std::move(e));
    }
    std::stable_sort(entries_.begin(), entries_.end(), [](const UnitEntry& a, const UnitEntry& b) {
      return a.surface.size() > b.surface.size();
    });
  }

  std::size_t size() const { return entries_.size(); }
  const std::vector<UnitEntry>& entries() const { return entries_; }

  // Longest entry matching text at `pos` and ending on a word boundary.
  std::optional<UnitMatch> match(std::u32string_view text, std::size_t pos) const {
    for (const auto& e : entries_) {
      const std::size_t n = e.surface.size();
      if (pos + n > text.size()) continue;
      bool ok = true;
      for (std::size_t k = 0; k < n && ok; ++k) {
        char32_t c = text[pos + k];
        if (e.spelled) c = utf8::ascii_lower(c);
        ok = c == e.surface[k];
      }
      if (!ok) continue;
      const std::size_t end = pos + n;
      if (end < text.size() && utf8::is_alnum(text[end]) && utf8::is_alnum(text[end - 1])) {
        continue;
      }
      return UnitMatch{&e, n};
    }
    return std::nullopt;
  }

  // Whole-string lookup.
  const UnitEntry* find(std::u32string_view surface) const {
    auto m = match(surface, 0);
    if (m && m->length == surface.size()) return m->entry;
    return nullptr;
  }

  bool is_unit(std::string_view surface) const { return find(utf8::decode(surface)) != nullptr; }

 private:
  std::vector<UnitEntry> entries_;  // longest surface first
};

}  // namespace measqc
