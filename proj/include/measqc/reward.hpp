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

// Pieces shared by the two reward functions: the term breakdown and the
// strict key/value config reader.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "measqc/error.hpp"

namespace measqc {

struct RewardTerm {
  std::string name;
  double weight = 1.0;
  double value = 0.0;
};

// total is the weighted sum of the terms, accumulated left to right.
struct RewardBreakdown {
  std::vector<RewardTerm> terms;
  double total = 0.0;
  // Per-term triggering spans, patterns or messages.
  std::map<std::string, std::vector<std::string>> evidence;

  double term(std::string_view name) const {
    for (const auto& t : terms) {
      if (t.name == name) return t.value;
    }
    throw Error("no reward term " + std::string(name));
  }

  void add(std::string name, double weight, double value) {
    terms.push_back({name, weight, value});
    evidence.try_emplace(std::move(name));
  }

  void finish() {
    total = 0.0;
    for (const auto& t : terms) total += t.weight * t.value;
  }

  friend bool operator==(const RewardBreakdown& a, const RewardBreakdown& b) {
    if (a.terms.size() != b.terms.size() || a.total != b.total || a.evidence != b.evidence) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
      const auto& x = a.terms[i];
      const auto& y = b.terms[i];
      if (x.name != y.name || x.weight != y.weight || x.value != y.value) return false;
    }
    return true;
  }
};

inline nlohmann::json to_json(const RewardBreakdown& b) {
  nlohmann::json terms = nlohmann::json::object();
  nlohmann::json weights = nlohmann::json::object();
  for (const auto& t : b.terms) {
    terms[t.name] = t.value;
    weights[t.name] = t.weight;
  }
  return {{"terms", terms}, {"weights", weights}, {"total", b.total}};
}

inline nlohmann::json evidence_json(const RewardBreakdown& b) {
  nlohmann::json e = nlohmann::json::object();
  for (const auto& [k, v] : b.evidence) e[k] = v;
  return e;
}

// 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// FNV-1a printed as 16 hex digits.
inline std::string fnv1a_hex(std::string_view s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(s)));
  return buf;
}

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& known,
                                const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw ConfigError("unknown key " + where + "." + it.key());
  }
}

inline void read_coefficient(const nlohmann::json& j, const char* key, double& out,
                             const std::string& where) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x) || x < 0) throw ConfigError(where + "." + key + " must be finite and >= 0");
  out = x;
}

}  // namespace detail

}  // namespace measqc
