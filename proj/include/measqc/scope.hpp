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

// Out-of-scope detectors: numeral-bearing strings that are not quantities
// (figure/table/equation/section citations, bracketed reference numerals,
// digits fused into names such as "4S RNA").

#pragma once

#include <cstddef>
#include <istream>
#include <memory>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "measqc/annotation.hpp"
#include "measqc/default_data.hpp"
#include "measqc/error.hpp"
#include "measqc/units.hpp"
#include "measqc/utf8.hpp"

namespace measqc {

struct ScopePattern {
  std::string pattern_id;
  std::string matcher;  // ECMAScript regex over UTF-8 bytes
  std::string description;
  std::string positive_example;
  std::string negative_example;
  bool icase = false;
  // Drop a hit when the letters following the digits form a known unit
  // ("300K" is a temperature, "4S" is a name).
  bool unit_exempt = false;

  std::shared_ptr<const std::regex> compiled;
};

struct ScopeHit {
  const ScopePattern* pattern = nullptr;
  std::string matched;
  Span span;  // scalar-value offsets within the scanned text
};

class ScopePatternTable {
 public:
  // Lines: id<TAB>flags<TAB>regex<TAB>positive<TAB>negative<TAB>description.
  static ScopePatternTable parse(std::istream& in) {
    ScopePatternTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      auto cols = utf8::split(line, '\t');
      if (cols.size() != 6 || cols[0].empty() || cols[2].empty()) {
        throw ParseError("scope pattern needs 6 tab-separated columns", line_no);
      }
      ScopePattern p;
      p.pattern_id = cols[0];
      p.icase = cols[1].find('i') != std::string::npos;
      p.unit_exempt = cols[1].find('u') != std::string::npos;
      p.matcher = cols[2];
      p.positive_example = cols[3];
      p.negative_example = cols[4];
      p.description = cols[5];
      auto flags = std::regex::ECMAScript | std::regex::optimize;
      if (p.icase) flags |= std::regex::icase;
      try {
        p.compiled = std::make_shared<const std::regex>(p.matcher, flags);
      } catch (const std::regex_error& e) {
        throw ParseError("bad regex for pattern '" + p.pattern_id + "': " + e.what(), line_no, 3);
      }
      t.patterns_.push_back(std::move(p));
    }
    return t;
  }

  static ScopePatternTable parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse(in);
  }

  static const ScopePatternTable& builtin() {
    static const ScopePatternTable t = parse(data::kScopePatterns);
    return t;
  }

  const std::vector<ScopePattern>& patterns() const { return patterns_; }

  // Every firing pattern with the substring it matched, ordered by pattern
  // then position.
  std::vector<ScopeHit> hits(std::string_view text, const UnitLexicon& units) const {
    std::vector<ScopeHit> out;
    const std::string s(text);
    for (const auto& p : patterns_) {
      for (auto it = std::sregex_iterator(s.begin(), s.end(), *p.compiled);
           it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        const int group = m.size() > 1 && m[1].matched ? 1 : 0;
        const auto byte_start = static_cast<std::size_t>(m.position(group));
        const auto byte_len = static_cast<std::size_t>(m.length(group));
        std::string matched = s.substr(byte_start, byte_len);
        if (matched.empty()) continue;
        if (p.unit_exempt) {
          std::size_t k = 0;
          while (k < matched.size() && matched[k] >= '0' && matched[k] <= '9') ++k;
          if (k < matched.size() && units.is_unit(matched.substr(k))) continue;
        }
        const std::size_t start = utf8::length(std::string_view(s).substr(0, byte_start));
        out.push_back({&p, matched, {start, start + utf8::length(matched)}});
      }
    }
    return out;
  }

  struct SelfTestFailure {
    std::string pattern_id;
    std::string message;
  };

  // Each pattern must fire on its positive example and stay silent on its
  // negative example.
  std::vector<SelfTestFailure> self_test(const UnitLexicon& units) const {
    std::vector<SelfTestFailure> failures;
    ScopePatternTable single;
    for (const auto& p : patterns_) {
      single.patterns_ = {p};
      if (single.hits(p.positive_example, units).empty()) {
        failures.push_back({p.pattern_id, "does not match '" + p.positive_example + "'"});
      }
      if (!single.hits(p.negative_example, units).empty()) {
        failures.push_back({p.pattern_id, "matches '" + p.negative_example + "'"});
      }
    }
    return failures;
  }

 private:
  std::vector<ScopePattern> patterns_;
};

}  // namespace measqc
