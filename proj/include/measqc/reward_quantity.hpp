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

// Reward for quantity-extraction traces:
//
//   R = w1 r_fmt + w2 r_scope + w3 r_fab + w4 r_mis
//
//   r_fmt    1 if the six tagged sections are well formed, else 0
//   r_scope  -lambda_loc * #predictions with an out-of-scope hit
//            + beta_scope * P_ans
//   r_fab    -lambda_fab * #predictions the quantity parser rejects
//   r_mis    mean token F1 - lambda_mis * (1 - mean token precision),
//            over prediction/gold pairs matched by relaxed credit
//
// P_ans is the share of predicted surfaces that occur in the gold
// quantities (multiset, whitespace-normalized); 0 for no predictions. With
// no matched pair, both means are 0.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "measqc/annotation.hpp"
#include "measqc/output_parser.hpp"
#include "measqc/quantity_parser.hpp"
#include "measqc/reward.hpp"
#include "measqc/scorer.hpp"
#include "measqc/tokens.hpp"
#include "measqc/utf8.hpp"

namespace measqc {

struct QuantityRewardConfig {
  double w1 = 1.0;
  double w2 = 1.0;
  double w3 = 1.0;
  double w4 = 1.0;
  double lambda_loc = 0.5;
  double beta_scope = 1.0;
  double lambda_fab = 0.5;
  double lambda_mis = 0.5;
  // P_ans by relaxed token credit instead of exact surface equality.
  bool relaxed_answer_precision = false;

  static QuantityRewardConfig from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {"w1", "w2", "w3", "w4", "lambda_loc", "beta_scope",
                                                "lambda_fab", "lambda_mis", "relaxed_answer_precision"};
    detail::reject_unknown_keys(j, known, "quantity");
    QuantityRewardConfig c;
    detail::read_coefficient(j, "w1", c.w1, "quantity");
    detail::read_coefficient(j, "w2", c.w2, "quantity");
    detail::read_coefficient(j, "w3", c.w3, "quantity");
    detail::read_coefficient(j, "w4", c.w4, "quantity");
    detail::read_coefficient(j, "lambda_loc", c.lambda_loc, "quantity");
    detail::read_coefficient(j, "beta_scope", c.beta_scope, "quantity");
    detail::read_coefficient(j, "lambda_fab", c.lambda_fab, "quantity");
    detail::read_coefficient(j, "lambda_mis", c.lambda_mis, "quantity");
    if (j.contains("relaxed_answer_precision")) {
      if (!j["relaxed_answer_precision"].is_boolean()) {
        throw ConfigError("quantity.relaxed_answer_precision must be a boolean");
      }
      c.relaxed_answer_precision = j["relaxed_answer_precision"].get<bool>();
    }
    return c;
  }

  nlohmann::json to_json() const {
    return {{"w1", w1},
            {"w2", w2},
            {"w3", w3},
            {"w4", w4},
            {"lambda_loc", lambda_loc},
            {"beta_scope", beta_scope},
            {"lambda_fab", lambda_fab},
            {"lambda_mis", lambda_mis},
            {"relaxed_answer_precision", relaxed_answer_precision}};
  }
};

// Conclusion rows as ungrounded Quantity annotations, ids P1, P2, ...
inline std::vector<Annotation> prediction_annotations(const std::vector<ConclusionRow>& rows,
                                                      const std::string& doc_id = "") {
  std::vector<Annotation> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Annotation a;
    a.doc_id = doc_id;
    a.cls = AnnotationClass::Quantity;
    a.annot_id = "P" + std::to_string(i + 1);
    a.surface = rows[i].surface;
    if (rows[i].unit) a.attributes[std::string(kUnitKey)] = *rows[i].unit;
    if (!rows[i].modifiers.empty()) a.attributes[std::string(kModifiersKey)] = rows[i].modifiers;
    out.push_back(std::move(a));
  }
  return out;
}

inline std::vector<Annotation> gold_quantities(const std::vector<Annotation>& golds) {
  std::vector<Annotation> out;
  for (const auto& a : golds) {
    if (a.cls == AnnotationClass::Quantity) out.push_back(a);
  }
  return out;
}

inline double reward_format(std::string_view generation) {
  return check_quantity_format(generation).well_formed ? 1.0 : 0.0;
}

inline double answer_precision(const std::vector<Annotation>& preds, const std::vector<Annotation>& golds,
                               bool relaxed = false) {
  if (preds.empty()) return 0.0;
  if (relaxed) {
    std::vector<Annotation> p = preds, g = golds;
    for (auto& a : p) a.span.reset();
    for (auto& a : g) a.span.reset();
    return match_spans(p, g, MatchCriterion::Relaxed).precision();
  }
  std::map<std::string, int> bag;
  for (const auto& g : golds) ++bag[utf8::normalize_whitespace(g.surface)];
  int hits = 0;
  for (const auto& p : preds) {
    auto it = bag.find(utf8::normalize_whitespace(p.surface));
    if (it != bag.end() && it->second > 0) {
      --it->second;
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(preds.size());
}

inline double reward_scope(const std::vector<Annotation>& preds, const std::vector<Annotation>& golds,
                           const QuantityRewardConfig& cfg = {}, std::vector<std::string>* evidence = nullptr) {
  int flagged = 0;
  for (const auto& p : preds) {
    const auto hits = out_of_scope_hits(p.surface);
    if (hits.empty()) continue;
    ++flagged;
    if (evidence) {
      for (const auto& h : hits) evidence->push_back(h.pattern->pattern_id + ": " + h.matched);
    }
  }
  return -cfg.lambda_loc * flagged + cfg.beta_scope * answer_precision(preds, golds, cfg.relaxed_answer_precision);
}

inline double reward_fabrication(const std::vector<Annotation>& preds, const QuantityRewardConfig& cfg = {},
                                 std::vector<std::string>* evidence = nullptr) {
  int rejected = 0;
  for (const auto& p : preds) {
    if (validate_span(p.surface)) continue;
    ++rejected;
    if (evidence) evidence->push_back(p.surface);
  }
  return 0.0 - cfg.lambda_fab * rejected;
}

inline double reward_misclassification(const std::vector<Annotation>& preds,
                                       const std::vector<Annotation>& golds,
                                       const QuantityRewardConfig& cfg = {},
                                       std::vector<std::string>* evidence = nullptr) {
  const auto m = match_spans(preds, golds, MatchCriterion::Relaxed);
  if (m.pairs.empty()) return -cfg.lambda_mis;
  const auto pred_by_id = detail::by_id(preds);
  const auto gold_by_id = detail::by_id(golds);
  double f1 = 0.0;
  double precision = 0.0;
  for (const auto& pr : m.pairs) {
    const auto& p = *pred_by_id.at(pr.pred_id);
    const auto& g = *gold_by_id.at(pr.gold_id);
    const auto s = token_prf(p.surface, g.surface);
    f1 += s.f1;
    precision += s.precision;
    if (evidence && s.f1 < 1.0) {
      evidence->push_back(p.surface + " ~ " + g.surface);
    }
  }
  const double n = static_cast<double>(m.pairs.size());
  return f1 / n - cfg.lambda_mis * (1.0 - precision / n);
}

// Terms computed from already-extracted predictions; r_fmt supplied.
inline RewardBreakdown quantity_breakdown(double r_fmt, const std::vector<Annotation>& preds,
                                          const std::vector<Annotation>& golds,
                                          const QuantityRewardConfig& cfg = {}) {
  const auto gq = gold_quantities(golds);
  RewardBreakdown b;
  b.add("r_fmt", cfg.w1, r_fmt);
  b.add("r_scope", cfg.w2, 0.0);
  b.add("r_fab", cfg.w3, 0.0);
  b.add("r_mis", cfg.w4, 0.0);
  b.terms[1].value = reward_scope(preds, gq, cfg, &b.evidence["r_scope"]);
  b.terms[2].value = reward_fabrication(preds, cfg, &b.evidence["r_fab"]);
  b.terms[3].value = reward_misclassification(preds, gq, cfg, &b.evidence["r_mis"]);
  b.finish();
  return b;
}

inline RewardBreakdown total_reward(std::string_view generation, const std::vector<Annotation>& golds,
                                    const QuantityRewardConfig& cfg = {}) {
  const auto verdict = check_quantity_format(generation);
  const auto trace = parse_quantity_trace(generation);
  auto b = quantity_breakdown(verdict.well_formed ? 1.0 : 0.0, prediction_annotations(trace.conclusion_rows),
                              golds, cfg);
  for (const auto& v : verdict.violations) b.evidence["r_fmt"].push_back(v.message);
  return b;
}

}  // namespace measqc
