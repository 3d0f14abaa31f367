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

// Reward for relation narratives:
//
//   R = w1 r_fmt + w2 r_comp + w3 r_mis
//
//   r_fmt   1 if the narrative is well formed and cites at least one
//           evidence sentence, all found in the document
//   r_comp  sum over aligned groups of
//             lambda_step * #recovered components + beta_full * [all recovered]
//           + lambda_exp * sum_c w_c * F1_c over the six span classes
//   r_mis   token F1 - (1 - token precision), counts summed over every
//           paired component
//
// Predicted and gold groups are aligned one-to-one on relaxed Quantity
// credit. Components of a gold group are its entity, property, each
// qualifier, unit and modifier set; one counts as recovered when its
// relaxed credit reaches the threshold (units and modifier sets must be
// equal). With no predicted group r_comp is 0; with no paired component
// r_mis is -1, or 0 when both sides are empty.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "measqc/annotation.hpp"
#include "measqc/output_parser.hpp"
#include "measqc/reward.hpp"
#include "measqc/reward_quantity.hpp"
#include "measqc/scorer.hpp"
#include "measqc/tokens.hpp"
#include "measqc/utf8.hpp"

namespace measqc {

struct RelationRewardConfig {
  double w1 = 1.0;
  double w2 = 1.0;
  double w3 = 1.0;
  double lambda_step = 0.2;
  double beta_full = 1.0;
  double lambda_exp = 0.5;
  double recover_threshold = 0.5;
  std::map<AnnotationClass, double> component_weights = {
      {AnnotationClass::Quantity, 1.0},       {AnnotationClass::Unit, 1.0},
      {AnnotationClass::Modifier, 1.0},       {AnnotationClass::MeasuredEntity, 2.0},
      {AnnotationClass::MeasuredProperty, 2.0}, {AnnotationClass::Qualifier, 3.0},
  };

  static RelationRewardConfig from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {"w1",         "w2",         "w3",
                                                "lambda_step", "beta_full",  "lambda_exp",
                                                "recover_threshold", "component_weights"};
    detail::reject_unknown_keys(j, known, "relation");
    RelationRewardConfig c;
    detail::read_coefficient(j, "w1", c.w1, "relation");
    detail::read_coefficient(j, "w2", c.w2, "relation");
    detail::read_coefficient(j, "w3", c.w3, "relation");
    detail::read_coefficient(j, "lambda_step", c.lambda_step, "relation");
    detail::read_coefficient(j, "beta_full", c.beta_full, "relation");
    detail::read_coefficient(j, "lambda_exp", c.lambda_exp, "relation");
    detail::read_coefficient(j, "recover_threshold", c.recover_threshold, "relation");
    if (c.recover_threshold > 1.0) throw ConfigError("relation.recover_threshold must be <= 1");
    if (j.contains("component_weights")) {
      const auto& w = j["component_weights"];
      if (!w.is_object()) throw ConfigError("relation.component_weights must be an object");
      for (auto it = w.begin(); it != w.end(); ++it) {
        const auto cls = class_from_string(it.key());
        if (!cls || is_relation(*cls)) {
          throw ConfigError("unknown key relation.component_weights." + it.key());
        }
        detail::read_coefficient(w, it.key().c_str(), c.component_weights[*cls],
                                 "relation.component_weights");
      }
    }
    return c;
  }

  nlohmann::json to_json() const {
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [cls, v] : component_weights) w[std::string(to_string(cls))] = v;
    return {{"w1", w1},
            {"w2", w2},
            {"w3", w3},
            {"lambda_step", lambda_step},
            {"beta_full", beta_full},
            {"lambda_exp", lambda_exp},
            {"recover_threshold", recover_threshold},
            {"component_weights", w}};
  }
};

// Both phases in one file: {"quantity": {...}, "relation": {...}}.
struct RewardConfig {
  QuantityRewardConfig quantity;
  RelationRewardConfig relation;

  static RewardConfig from_json(const nlohmann::json& j) {
    detail::reject_unknown_keys(j, {"quantity", "relation"}, "config");
    RewardConfig c;
    if (j.contains("quantity")) c.quantity = QuantityRewardConfig::from_json(j["quantity"]);
    if (j.contains("relation")) c.relation = RelationRewardConfig::from_json(j["relation"]);
    return c;
  }

  static RewardConfig parse(std::string_view text) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return from_json(j);
  }

  nlohmann::json to_json() const { return {{"quantity", quantity.to_json()}, {"relation", relation.to_json()}}; }

  std::string hash() const { return fnv1a_hex(to_json().dump()); }
};

// --- alignment ----------------------------------------------------------

struct ComponentCredit {
  std::string component;  // entity, property, qualifier, unit, modifiers
  std::string gold;
  std::string pred;  // empty when nothing was predicted
  double credit = 0.0;
  bool recovered = false;
};

struct AlignedGroups {
  std::size_t pred = 0;  // indices into the two group lists
  std::size_t gold = 0;
  Rational quantity_credit;
  std::vector<ComponentCredit> components;

  std::size_t recovered() const {
    return static_cast<std::size_t>(std::count_if(components.begin(), components.end(),
                                                  [](const ComponentCredit& c) { return c.recovered; }));
  }
  bool closed() const { return recovered() == components.size(); }
};

struct GroupAlignment {
  std::vector<AlignedGroups> pairs;  // in gold order
  std::vector<std::size_t> unmatched_gold;
  std::vector<std::size_t> unmatched_pred;
};

namespace detail {

inline std::string join_modifiers(const std::vector<std::string>& mods) {
  std::string out;
  for (const auto& m : mods) out += (out.empty() ? "" : ",") + m;
  return out;
}

// Component credits of a predicted group against an aligned gold group.
inline std::vector<ComponentCredit> component_credits(const MeasurementGroup& p, const MeasurementGroup& g,
                                                      double threshold) {
  std::vector<ComponentCredit> out;
  auto span_component = [&](const char* name, const std::optional<Annotation>& pa,
                            const std::optional<Annotation>& ga) {
    if (!ga) return;
    ComponentCredit c{name, ga->surface, pa ? pa->surface : "", 0.0, false};
    if (pa) c.credit = span_credit(*pa, *ga, MatchCriterion::Relaxed).value();
    c.recovered = pa && c.credit >= threshold;
    out.push_back(std::move(c));
  };
  span_component("entity", p.measured_entity, g.measured_entity);
  span_component("property", p.measured_property, g.measured_property);

  if (!g.qualifiers.empty()) {
    std::vector<int> assign;
    if (!p.qualifiers.empty()) {
      std::vector<std::vector<Rational>> w(g.qualifiers.size(), std::vector<Rational>(p.qualifiers.size()));
      for (std::size_t i = 0; i < g.qualifiers.size(); ++i) {
        for (std::size_t j = 0; j < p.qualifiers.size(); ++j) {
          w[i][j] = span_credit(p.qualifiers[j], g.qualifiers[i], MatchCriterion::Relaxed);
        }
      }
      assign = max_weight_assignment(w);
    }
    for (std::size_t i = 0; i < g.qualifiers.size(); ++i) {
      ComponentCredit c{"qualifier", g.qualifiers[i].surface, "", 0.0, false};
      if (!assign.empty() && assign[i] >= 0) {
        const auto& pq = p.qualifiers[static_cast<std::size_t>(assign[i])];
        c.pred = pq.surface;
        c.credit = span_credit(pq, g.qualifiers[i], MatchCriterion::Relaxed).value();
        c.recovered = c.credit >= threshold;
      }
      out.push_back(std::move(c));
    }
  }

  if (const auto gu = g.quantity.unit()) {
    const auto pu = p.quantity.unit();
    const bool same = pu && utf8::trim(*pu) == utf8::trim(*gu);
    out.push_back({"unit", *gu, pu.value_or(""), same ? 1.0 : 0.0, same});
  }
  if (const auto gm = g.quantity.modifiers(); !gm.empty()) {
    const auto pm = p.quantity.modifiers();
    const bool same = sorted_set(pm) == sorted_set(gm);
    out.push_back({"modifiers", join_modifiers(sorted_set(gm)), join_modifiers(sorted_set(pm)),
                   same ? 1.0 : 0.0, same});
  }
  return out;
}

}  // namespace detail

// One-to-one alignment maximizing total relaxed Quantity credit. Gold
// groups are visited in order of quantity start offset, so ties go to the
// earliest gold group.
inline GroupAlignment align_groups(const std::vector<MeasurementGroup>& preds,
                                   const std::vector<MeasurementGroup>& golds,
                                   const RelationRewardConfig& cfg = {}) {
  GroupAlignment out;
  std::vector<std::size_t> gold_order(golds.size());
  for (std::size_t i = 0; i < golds.size(); ++i) gold_order[i] = i;
  std::stable_sort(gold_order.begin(), gold_order.end(), [&](std::size_t a, std::size_t b) {
    const auto sa = golds[a].quantity.span ? golds[a].quantity.span->start : SIZE_MAX;
    const auto sb = golds[b].quantity.span ? golds[b].quantity.span->start : SIZE_MAX;
    return sa < sb;
  });
  std::vector<int> assign;
  if (!golds.empty() && !preds.empty()) {
    std::vector<std::vector<Rational>> w(golds.size(), std::vector<Rational>(preds.size()));
    for (std::size_t r = 0; r < golds.size(); ++r) {
      for (std::size_t j = 0; j < preds.size(); ++j) {
        w[r][j] = span_credit(preds[j].quantity, golds[gold_order[r]].quantity, MatchCriterion::Relaxed);
      }
    }
    assign = max_weight_assignment(w);
    for (std::size_t r = 0; r < golds.size(); ++r) {
      if (assign[r] >= 0 && w[r][static_cast<std::size_t>(assign[r])].num == 0) assign[r] = -1;
    }
  }
  std::vector<char> pred_used(preds.size(), 0);
  for (std::size_t r = 0; r < golds.size(); ++r) {
    const std::size_t gi = gold_order[r];
    if (assign.empty() || assign[r] < 0) {
      out.unmatched_gold.push_back(gi);
      continue;
    }
    const auto pi = static_cast<std::size_t>(assign[r]);
    pred_used[pi] = 1;
    AlignedGroups a;
    a.pred = pi;
    a.gold = gi;
    a.quantity_credit = span_credit(preds[pi].quantity, golds[gi].quantity, MatchCriterion::Relaxed);
    a.components = detail::component_credits(preds[pi], golds[gi], cfg.recover_threshold);
    out.pairs.push_back(std::move(a));
  }
  for (std::size_t j = 0; j < preds.size(); ++j) {
    if (!pred_used[j]) out.unmatched_pred.push_back(j);
  }
  return out;
}

// --- terms ----------------------------------------------------------------

inline double reward_format_rel(const RelationNarrative& narrative, const FormatVerdict& verdict) {
  return verdict.well_formed && !narrative.evidence_sentences.empty() && narrative.all_grounded() ? 1.0 : 0.0;
}

inline constexpr std::array<AnnotationClass, 6> kComponentClasses = {
    AnnotationClass::Quantity,       AnnotationClass::Unit,
    AnnotationClass::Modifier,       AnnotationClass::MeasuredEntity,
    AnnotationClass::MeasuredProperty, AnnotationClass::Qualifier,
};

// Weighted per-class relaxed F1 of the predicted groups against the gold
// groups of one document.
inline double exploration_score(const std::vector<MeasurementGroup>& preds,
                                const std::vector<MeasurementGroup>& golds, const RelationRewardConfig& cfg) {
  const auto scores = score_document(flatten_groups(preds), flatten_groups(golds), MatchCriterion::Relaxed);
  double sum = 0.0;
  for (auto cls : kComponentClasses) {
    const auto it = cfg.component_weights.find(cls);
    const double w = it == cfg.component_weights.end() ? 1.0 : it->second;
    sum += w * scores[static_cast<std::size_t>(cls)].f1;
  }
  return sum;
}

inline double reward_completeness(const GroupAlignment& alignment, const std::vector<MeasurementGroup>& preds,
                                  const std::vector<MeasurementGroup>& golds, const RelationRewardConfig& cfg = {},
                                  std::vector<std::string>* evidence = nullptr) {
  if (preds.empty()) return 0.0;
  double stepwise = 0.0;
  for (const auto& a : alignment.pairs) {
    stepwise += cfg.lambda_step * static_cast<double>(a.recovered()) + (a.closed() ? cfg.beta_full : 0.0);
    if (evidence) {
      for (const auto& c : a.components) {
        if (!c.recovered) evidence->push_back("missed " + c.component + ": " + c.gold);
      }
    }
  }
  return stepwise + cfg.lambda_exp * exploration_score(preds, golds, cfg);
}

// Paired components of the aligned groups as (predicted, gold) surfaces.
inline std::vector<std::pair<std::string, std::string>> paired_components(
    const GroupAlignment& alignment, const std::vector<MeasurementGroup>& preds,
    const std::vector<MeasurementGroup>& golds) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& a : alignment.pairs) {
    const auto& p = preds[a.pred];
    const auto& g = golds[a.gold];
    out.emplace_back(p.quantity.surface, g.quantity.surface);
    if (p.measured_entity && g.measured_entity) {
      out.emplace_back(p.measured_entity->surface, g.measured_entity->surface);
    }
    if (p.measured_property && g.measured_property) {
      out.emplace_back(p.measured_property->surface, g.measured_property->surface);
    }
    for (const auto& c : a.components) {
      if (c.component == "qualifier" && !c.pred.empty()) out.emplace_back(c.pred, c.gold);
    }
  }
  return out;
}

// Token counts are summed pair by pair, so a token only counts as common
// when it appears in the gold component it was paired with.
inline double misclassification_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                                           bool any_side_nonempty) {
  if (pairs.empty()) return any_side_nonempty ? -1.0 : 0.0;
  TokenCounts total;
  for (const auto& [ps, gs] : pairs) {
    const auto c = token_counts(ps, gs);
    total.common += c.common;
    total.predicted += c.predicted;
    total.gold += c.gold;
  }
  const double f1 = f1_rational(total).value();
  const double precision =
      total.predicted ? static_cast<double>(total.common) / static_cast<double>(total.predicted) : 0.0;
  return f1 - (1.0 - precision);
}

inline double reward_misclassification_rel(const GroupAlignment& alignment,
                                           const std::vector<MeasurementGroup>& preds,
                                           const std::vector<MeasurementGroup>& golds,
                                           std::vector<std::string>* evidence = nullptr) {
  const auto pairs = paired_components(alignment, preds, golds);
  if (evidence) {
    for (const auto& [p, g] : pairs) {
      if (token_prf(p, g).precision < 1.0) evidence->push_back(p + " ~ " + g);
    }
  }
  return misclassification_from_pairs(pairs, !preds.empty() || !golds.empty());
}

// Terms for already-parsed groups; r_fmt supplied.
inline RewardBreakdown relation_breakdown(double r_fmt, const std::vector<MeasurementGroup>& preds,
                                          const std::vector<MeasurementGroup>& golds,
                                          const RelationRewardConfig& cfg = {}) {
  const auto alignment = align_groups(preds, golds, cfg);
  RewardBreakdown b;
  b.add("r_fmt", cfg.w1, r_fmt);
  b.add("r_comp", cfg.w2, 0.0);
  b.add("r_mis", cfg.w3, 0.0);
  b.terms[1].value = reward_completeness(alignment, preds, golds, cfg, &b.evidence["r_comp"]);
  b.terms[2].value = reward_misclassification_rel(alignment, preds, golds, &b.evidence["r_mis"]);
  b.finish();
  return b;
}

inline RewardBreakdown total_reward_rel(std::string_view generation, const Document& doc,
                                        const std::vector<MeasurementGroup>& gold_groups,
                                        const RelationRewardConfig& cfg = {},
                                        const CueLexicon& cues = CueLexicon::builtin()) {
  const auto parsed = parse_relation_narrative(generation, doc, cues);
  auto b = relation_breakdown(reward_format_rel(parsed.narrative, parsed.verdict), parsed.narrative.groups,
                              gold_groups, cfg);
  for (const auto& v : parsed.verdict.violations) b.evidence["r_fmt"].push_back(v.message);
  if (parsed.narrative.evidence_sentences.empty()) b.evidence["r_fmt"].push_back("no evidence sentences");
  return b;
}

}  // namespace measqc
