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

// JSON-in, JSON-out entry points for host-language bindings. The CLI builds
// its records with these same functions, so a binding that forwards to them
// produces output identical to the CLI's. Everything here is stateless and
// safe to call from many threads at once.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "measqc/measqc.hpp"

namespace measqc::bindings {

// Reward coefficients as a plain key-value mapping. Unknown keys are
// rejected at construction with ConfigError.
class BoundConfig {
 public:
  BoundConfig() = default;
  explicit BoundConfig(const nlohmann::json& mapping) : cfg_(RewardConfig::from_json(mapping)) {}
  static BoundConfig parse(std::string_view json_text) {
    BoundConfig b;
    b.cfg_ = RewardConfig::parse(json_text);
    return b;
  }

  const RewardConfig& config() const { return cfg_; }
  nlohmann::json to_json() const { return cfg_.to_json(); }
  std::string hash() const { return cfg_.hash(); }

 private:
  RewardConfig cfg_;
};

// One parse record, as written by `measqc parse`.
inline nlohmann::json quantity_record(const std::string& doc_id, const ParsedQuantity& q) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"doc_id", doc_id},
          {"surface", q.surface},
          {"start", q.span.start},
          {"end", q.span.end},
          {"value", q.value},
          {"low", q.range ? opt(q.range->low) : nlohmann::json(nullptr)},
          {"high", q.range ? opt(q.range->high) : nlohmann::json(nullptr)},
          {"tolerance", opt(q.tolerance)},
          {"unit", q.unit ? nlohmann::json(*q.unit) : nlohmann::json(nullptr)},
          {"unit_surface", q.unit_surface},
          {"dimension", q.unit_dimension},
          {"modifiers", q.modifiers},
          {"kind", std::string(to_string(q.kind))}};
}

// The record for a candidate span, or null when it is not a quantity.
inline nlohmann::json bound_validate_span(std::string_view candidate, const std::string& doc_id = "") {
  const auto q = validate_span(candidate);
  return q ? quantity_record(doc_id, *q) : nlohmann::json(nullptr);
}

inline nlohmann::json bound_extract_quantities(std::string_view text, const std::string& doc_id = "") {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : extract_quantities(text)) out.push_back(quantity_record(doc_id, q));
  return out;
}

// Score output, as written by `measqc score`.
inline nlohmann::json score_protocol(const ScoreReport& r) {
  nlohmann::json p = {{"criterion", to_string(r.criterion)}, {"averaging", to_string(r.averaging)}};
  p["config_hash"] = fnv1a_hex(p.dump());
  return p;
}

inline nlohmann::json score_record(const ScoreReport& r) {
  return {{"protocol", score_protocol(r)}, {"report", to_json(r)}};
}

inline nlohmann::json bound_score(const Corpus& pred, const Corpus& gold, std::string_view criterion = "relaxed",
                                  std::string_view averaging = "macro") {
  Averaging avg;
  if (averaging == "macro") {
    avg = Averaging::Macro;
  } else if (averaging == "micro") {
    avg = Averaging::Micro;
  } else {
    throw ConfigError("unknown averaging '" + std::string(averaging) + "'");
  }
  return score_record(score_report(pred, gold, criterion_from_string(criterion), avg));
}

// TSV text in, as the CLI reads files.
inline nlohmann::json bound_score_tsv(const std::string& pred_tsv, const std::string& gold_tsv,
                                      std::string_view criterion = "relaxed", std::string_view averaging = "macro") {
  return bound_score(load_measeval_tsv(pred_tsv), load_measeval_tsv(gold_tsv), criterion, averaging);
}

// One reward record, as written by `measqc reward-quantity` and
// `measqc reward-relation`.
inline nlohmann::json reward_record(const std::string& id, const std::string& doc_id, const RewardBreakdown& b,
                                    const std::string& phase, const std::string& config_hash) {
  auto j = to_json(b);
  j["id"] = id;
  j["doc_id"] = doc_id;
  j["evidence"] = evidence_json(b);
  j["protocol"] = {{"phase", phase}, {"config_hash", config_hash}};
  return j;
}

struct GenerationInput {
  std::string id;
  std::string doc_id;
  std::string generation;
};

inline nlohmann::json bound_reward_quantity(const GenerationInput& g, const std::vector<Annotation>& gold,
                                            const BoundConfig& cfg = {}) {
  return reward_record(g.id, g.doc_id, total_reward(g.generation, gold, cfg.config().quantity), "quantity",
                       cfg.hash());
}

inline nlohmann::json bound_reward_relation(const GenerationInput& g, const Document& doc,
                                            const std::vector<MeasurementGroup>& gold, const BoundConfig& cfg = {}) {
  return reward_record(g.id, g.doc_id, total_reward_rel(g.generation, doc, gold, cfg.config().relation), "relation",
                       cfg.hash());
}

// Batch variants over a gold corpus; records come back in input order.
// Unknown documents raise ValidationError listing them.
inline std::vector<nlohmann::json> bound_reward_quantity_batch(const std::vector<GenerationInput>& gens,
                                                               const Corpus& gold, const BoundConfig& cfg = {}) {
  std::vector<std::string> unknown;
  for (const auto& g : gens) {
    if (!gold.annotations.count(g.doc_id) && !gold.documents.count(g.doc_id)) unknown.push_back(g.doc_id);
  }
  if (!unknown.empty()) throw ValidationError("generations for documents absent from gold", unknown);
  std::vector<nlohmann::json> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(bound_reward_quantity(g, gold.of(g.doc_id), cfg));
  return out;
}

inline std::vector<nlohmann::json> bound_reward_relation_batch(const std::vector<GenerationInput>& gens,
                                                               const std::map<std::string, Document>& docs,
                                                               const Corpus& gold, const BoundConfig& cfg = {}) {
  std::vector<std::string> missing;
  for (const auto& g : gens) {
    if (!docs.count(g.doc_id)) missing.push_back(g.doc_id);
  }
  if (!missing.empty()) throw ValidationError("generations for documents absent from --docs", missing);
  std::map<std::string, std::vector<MeasurementGroup>> groups;
  std::vector<nlohmann::json> out;
  out.reserve(gens.size());
  for (const auto& g : gens) {
    auto it = groups.find(g.doc_id);
    if (it == groups.end()) it = groups.emplace(g.doc_id, assemble_groups(gold.of(g.doc_id)).groups).first;
    out.push_back(bound_reward_relation(g, docs.at(g.doc_id), it->second, cfg));
  }
  return out;
}

inline const char* version() { return kVersion; }

}  // namespace measqc::bindings
