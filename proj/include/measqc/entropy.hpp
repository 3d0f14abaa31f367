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

// Entropy of the tokens a model emits inside square-bracketed fields.
//
// Token entropy is Shannon entropy in bits over the listed top-k
// candidates; residual mass is ignored. Brackets are grouped by the role of
// the cue phrase before them: Quantity, Unit and Modifier form the quantity
// group, MeasuredEntity, MeasuredProperty and Qualifier the relation group.
// Per group:
//
//   H_B       mean entropy of bracket tokens
//   sigma_B   population std of bracket-token entropies (or of per-bracket
//             mean entropies)
//   R_B       share of brackets with a token above tau
//   R_sample  share of samples, among those with a bracket of the group,
//             that contain such a bracket

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "measqc/annotation.hpp"
#include "measqc/error.hpp"
#include "measqc/output_parser.hpp"

namespace measqc {

// Printed top-k tables are rounded, so their mass may exceed 1 slightly.
inline constexpr double kMassTolerance = 5e-3;

inline double token_entropy(const std::vector<double>& probs) {
  double sum = 0.0;
  double h = 0.0;
  for (double p : probs) {
    if (!(p > 0.0) || p > 1.0) throw Error("probability outside (0, 1]: " + std::to_string(p));
    sum += p;
    h -= p * std::log2(p);
  }
  if (sum > 1.0 + kMassTolerance) throw Error("probabilities sum to more than 1: " + std::to_string(sum));
  return h == 0.0 ? 0.0 : h;  // no negative zero
}

struct TokenRecord {
  std::string token;
  std::vector<std::pair<std::string, double>> top_k;
  std::optional<double> entropy;  // precomputed bits

  std::vector<double> probabilities() const {
    std::vector<double> out;
    for (const auto& [_, p] : top_k) out.push_back(p);
    return out;
  }

  // Throws when the distribution is malformed or disagrees with `entropy`.
  void validate() const {
    for (std::size_t i = 1; i < top_k.size(); ++i) {
      if (top_k[i].second > top_k[i - 1].second) throw Error("top_k not in nonincreasing order for '" + token + "'");
    }
    if (top_k.empty()) {
      if (!entropy) throw Error("token '" + token + "' has neither top_k nor entropy");
      return;
    }
    const double h = token_entropy(probabilities());
    if (entropy && std::abs(*entropy - h) > 1e-6) {
      throw Error("stated entropy of '" + token + "' differs from its distribution");
    }
  }

  double bits() const { return entropy ? *entropy : token_entropy(probabilities()); }
};

struct TokenTrace {
  std::string sample_id;
  std::vector<TokenRecord> tokens;

  std::string text() const {
    std::string out;
    for (const auto& t : tokens) out += t.token;
    return out;
  }
};

enum class RoleGroup { Quantity, Relation };

inline std::string_view to_string(RoleGroup g) { return g == RoleGroup::Quantity ? "quantity" : "relation"; }

inline std::optional<RoleGroup> role_group(AnnotationClass c) {
  switch (c) {
    case AnnotationClass::Quantity:
    case AnnotationClass::Unit:
    case AnnotationClass::Modifier:
      return RoleGroup::Quantity;
    case AnnotationClass::MeasuredEntity:
    case AnnotationClass::MeasuredProperty:
    case AnnotationClass::Qualifier:
      return RoleGroup::Relation;
    default:
      return std::nullopt;
  }
}

struct BracketSegment {
  std::string text;                   // between the brackets
  std::vector<std::size_t> tokens;    // indices into the trace
  std::vector<double> entropies;      // bits, one per token
  std::optional<AnnotationClass> role;  // none without a recognized cue
  double max_entropy = 0.0;
  double mean_entropy = 0.0;
};

struct SegmentExtraction {
  std::vector<BracketSegment> segments;
  std::vector<std::size_t> unmatched;  // byte offsets of unmatched brackets
};

// Brackets are located in the concatenated token text. A token belongs to
// a segment when any of its characters lies strictly between the brackets.
inline SegmentExtraction extract_bracket_segments(const TokenTrace& trace,
                                                  const CueLexicon& cues = CueLexicon::builtin()) {
  SegmentExtraction out;
  std::vector<std::size_t> starts;
  std::string text;
  for (const auto& t : trace.tokens) {
    starts.push_back(text.size());
    text += t.token;
  }
  std::size_t gap_start = 0;
  std::size_t p = 0;
  while (p < text.size()) {
    const char c = text[p];
    if (c == ']') {
      out.unmatched.push_back(p);
      ++p;
      continue;
    }
    if (c != '[') {
      ++p;
      continue;
    }
    const std::size_t close = text.find(']', p + 1);
    const std::size_t reopen = text.find('[', p + 1);
    if (close == std::string::npos || (reopen != std::string::npos && reopen < close)) {
      out.unmatched.push_back(p);
      ++p;
      continue;
    }
    BracketSegment s;
    s.text = text.substr(p + 1, close - p - 1);
    s.role = cues.role_for(std::string_view(text).substr(gap_start, p - gap_start));
    for (std::size_t i = 0; i < trace.tokens.size(); ++i) {
      const std::size_t a = starts[i];
      const std::size_t b = a + trace.tokens[i].token.size();
      if (a < close && b > p + 1) {
        s.tokens.push_back(i);
        s.entropies.push_back(trace.tokens[i].bits());
      }
    }
    double sum = 0.0;
    for (double h : s.entropies) {
      sum += h;
      s.max_entropy = std::max(s.max_entropy, h);
    }
    if (!s.entropies.empty()) s.mean_entropy = sum / static_cast<double>(s.entropies.size());
    out.segments.push_back(std::move(s));
    gap_start = close + 1;
    p = close + 1;
  }
  return out;
}

enum class SigmaOver { Tokens, Brackets };

struct EntropyStats {
  double H_B = 0.0;
  double sigma_B = 0.0;
  double R_B = 0.0;
  double R_sample = 0.0;
  double tau = 1.0;
  std::size_t n_brackets = 0;
  std::size_t n_samples = 0;  // samples with at least one bracket of the group
  std::size_t n_tokens = 0;
};

struct EntropyReport {
  double tau = 1.0;
  SigmaOver sigma_over = SigmaOver::Tokens;
  std::size_t n_samples = 0;
  std::optional<EntropyStats> quantity;  // absent when the group has no bracket
  std::optional<EntropyStats> relation;
  std::size_t unlabeled_brackets = 0;
  std::size_t unmatched_brackets = 0;

  const std::optional<EntropyStats>& of(RoleGroup g) const { return g == RoleGroup::Quantity ? quantity : relation; }
};

inline EntropyReport compute_stats(const std::vector<TokenTrace>& samples, double tau = 1.0,
                                   SigmaOver sigma_over = SigmaOver::Tokens,
                                   const CueLexicon& cues = CueLexicon::builtin()) {
  if (!(tau > 0.0)) throw ConfigError("tau must be > 0");
  EntropyReport r;
  r.tau = tau;
  r.sigma_over = sigma_over;
  r.n_samples = samples.size();

  struct Acc {
    std::vector<double> token_h;
    std::vector<double> bracket_means;
    std::size_t brackets = 0;
    std::size_t spiky_brackets = 0;
    std::size_t samples = 0;
    std::size_t spiky_samples = 0;
  };
  Acc acc[2];
  for (const auto& s : samples) {
    const auto ex = extract_bracket_segments(s, cues);
    r.unmatched_brackets += ex.unmatched.size();
    bool seen[2] = {false, false};
    bool spiked[2] = {false, false};
    for (const auto& seg : ex.segments) {
      const auto g = seg.role ? role_group(*seg.role) : std::nullopt;
      if (!g) {
        ++r.unlabeled_brackets;
        continue;
      }
      auto& a = acc[static_cast<int>(*g)];
      seen[static_cast<int>(*g)] = true;
      ++a.brackets;
      a.token_h.insert(a.token_h.end(), seg.entropies.begin(), seg.entropies.end());
      a.bracket_means.push_back(seg.mean_entropy);
      if (seg.max_entropy > tau) {
        ++a.spiky_brackets;
        spiked[static_cast<int>(*g)] = true;
      }
    }
    for (int g = 0; g < 2; ++g) {
      acc[g].samples += seen[g];
      acc[g].spiky_samples += spiked[g];
    }
  }
  auto mean_std = [](const std::vector<double>& v) {
    if (v.empty()) return std::pair<double, double>{0.0, 0.0};
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::pair<double, double>{m, std::sqrt(ss / static_cast<double>(v.size()))};
  };
  for (int g = 0; g < 2; ++g) {
    const auto& a = acc[g];
    if (a.brackets == 0) continue;
    EntropyStats st;
    st.tau = tau;
    st.n_brackets = a.brackets;
    st.n_samples = a.samples;
    st.n_tokens = a.token_h.size();
    const auto [m, sd] = mean_std(a.token_h);
    st.H_B = m;
    st.sigma_B = sigma_over == SigmaOver::Tokens ? sd : mean_std(a.bracket_means).second;
    st.R_B = static_cast<double>(a.spiky_brackets) / static_cast<double>(a.brackets);
    st.R_sample = static_cast<double>(a.spiky_samples) / static_cast<double>(a.samples);
    (g == 0 ? r.quantity : r.relation) = st;
  }
  return r;
}

// --- JSON -----------------------------------------------------------------

// {"sample_id": ..., "tokens": [{"t": ..., "top_k": [[cand, p], ...], "entropy": bits?}, ...]}
inline TokenTrace trace_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("tokens") || !j["tokens"].is_array()) {
    throw ValidationError("trace record needs a tokens array");
  }
  TokenTrace t;
  if (j.contains("sample_id")) {
    t.sample_id = j["sample_id"].is_string() ? j["sample_id"].get<std::string>() : j["sample_id"].dump();
  }
  for (const auto& tok : j["tokens"]) {
    if (!tok.is_object() || !tok.contains("t") || !tok["t"].is_string()) {
      throw ValidationError("token entry needs a string field t", {t.sample_id});
    }
    TokenRecord r;
    r.token = tok["t"].get<std::string>();
    if (tok.contains("top_k")) {
      for (const auto& c : tok["top_k"]) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_number()) {
          throw ValidationError("top_k entries are [candidate, probability] pairs", {t.sample_id});
        }
        r.top_k.emplace_back(c[0].get<std::string>(), c[1].get<double>());
      }
    }
    if (tok.contains("entropy")) r.entropy = tok["entropy"].get<double>();
    try {
      r.validate();
    } catch (const ValidationError&) {
      throw;
    } catch (const Error& e) {
      throw ValidationError(e.what(), {t.sample_id});
    }
    t.tokens.push_back(std::move(r));
  }
  return t;
}

inline nlohmann::json to_json(const EntropyStats& s) {
  return {{"H_B", s.H_B},           {"sigma_B", s.sigma_B},       {"R_B", s.R_B},
          {"R_sample", s.R_sample}, {"n_brackets", s.n_brackets}, {"n_samples", s.n_samples},
          {"n_tokens", s.n_tokens}};
}

inline nlohmann::json to_json(const EntropyReport& r) {
  auto group = [](const std::optional<EntropyStats>& s) -> nlohmann::json {
    if (!s) return {{"absent", true}};
    auto j = to_json(*s);
    j["absent"] = false;
    return j;
  };
  return {{"tau", r.tau},
          {"sigma_over", r.sigma_over == SigmaOver::Tokens ? "tokens" : "brackets"},
          {"n_samples", r.n_samples},
          {"quantity", group(r.quantity)},
          {"relation", group(r.relation)},
          {"unlabeled_brackets", r.unlabeled_brackets},
          {"unmatched_brackets", r.unmatched_brackets}};
}

}  // namespace measqc
