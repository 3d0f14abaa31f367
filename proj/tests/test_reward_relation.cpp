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

#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "fixtures.hpp"
#include "measqc/reward_relation.hpp"
#include "oracles.hpp"
#include "reward_cases.hpp"
#include "synthetic.hpp"

using namespace measqc;
using namespace measqc::fixtures;
using namespace measqc::cases;

TEST(RewardFormatRel, FurnaceNarratives) {
  const Document doc = furnace_document();
  const std::string grpo = read_fixture("furnace_grpo.txt");
  auto p = parse_relation_narrative(grpo, doc);
  EXPECT_EQ(reward_format_rel(p.narrative, p.verdict), 1.0);

  const std::string no_evidence = grpo.substr(grpo.find("<ANALYSIS>"));
  p = parse_relation_narrative(no_evidence, doc);
  EXPECT_EQ(reward_format_rel(p.narrative, p.verdict), 0.0);

  std::string perturbed = grpo;
  perturbed.replace(perturbed.find("pre-heated"), 10, "preheated!");
  p = parse_relation_narrative(perturbed, doc);
  EXPECT_EQ(reward_format_rel(p.narrative, p.verdict), 0.0);
}

TEST(RewardCompleteness, ExactFurnaceGroupByFormula) {
  const auto gold = furnace_gold_group();
  const std::vector<MeasurementGroup> g = {gold};
  const auto a = align_groups(g, g);
  ASSERT_EQ(a.pairs.size(), 1u);
  EXPECT_EQ(a.pairs[0].components.size(), 4u);  // entity, property, unit, modifiers
  // 0.2 * 4 recovered + 1.0 closure + 0.5 * (1 + 1 + 1 + 2 + 2 + 3).
  EXPECT_DOUBLE_EQ(reward_completeness(a, g, g), 0.2 * 4 + 1.0 + 0.5 * 10);

  // Quantity alone: unit and modifiers recovered, no entity or property.
  const std::vector<MeasurementGroup> q_only = {without(gold, 0b0011)};
  const auto b = align_groups(q_only, g);
  EXPECT_EQ(b.pairs[0].recovered(), 2u);
  EXPECT_FALSE(b.pairs[0].closed());
  EXPECT_LT(reward_completeness(b, q_only, g), reward_completeness(a, g, g));
  EXPECT_EQ(reward_completeness(align_groups({}, g), {}, g), 0.0);
}

TEST(RewardCompleteness, FullRecoveryDominatesEverySubset) {
  std::mt19937 rng(2718);
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const auto gc = random_group(rng);
    const std::vector<MeasurementGroup> gold = {gc.gold};
    const int n = slot_count(gc.gold);
    ASSERT_LE(n, 6);
    const auto full = align_groups(gold, gold);
    const double best = reward_completeness(full, gold, gold);
    ASSERT_TRUE(full.pairs.at(0).closed());
    for (unsigned mask = 1; mask < (1U << n); ++mask) {
      const std::vector<MeasurementGroup> sub = {without(gc.gold, mask)};
      const auto a = align_groups(sub, gold);
      ASSERT_EQ(a.pairs.size(), 1u);
      EXPECT_GE(best, reward_completeness(a, sub, gold)) << t << " mask " << mask;
      // Closure fires exactly when nothing was removed.
      EXPECT_FALSE(a.pairs[0].closed()) << t << " mask " << mask;
      EXPECT_EQ(a.pairs[0].recovered(), static_cast<std::size_t>(n - std::popcount(mask)));
      ++checked;
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(RewardMisclassificationRel, DocumentedCases) {
  EXPECT_EQ(misclassification_from_pairs({{"Samples", "Samples"}, {"up to 798 °C", "up to 798 °C"}}, true), 1.0);
  EXPECT_EQ(misclassification_from_pairs({{"pre-heated furnace at temperatures up to 798", "Samples"}}, true), -1.0);
  EXPECT_EQ(misclassification_from_pairs({}, true), -1.0);
  EXPECT_EQ(misclassification_from_pairs({}, false), 0.0);
  EXPECT_EQ(reward_misclassification_rel({}, {}, {}), 0.0);
  const std::vector<MeasurementGroup> g = {furnace_gold_group()};
  EXPECT_EQ(reward_misclassification_rel(align_groups({}, g), {}, g), -1.0);
}

TEST(TotalRewardRel, GrpoBeatsSftByTerm) {
  const Document doc = furnace_document();
  const std::vector<MeasurementGroup> gold = {furnace_gold_group()};
  const auto grpo = total_reward_rel(read_fixture("furnace_grpo.txt"), doc, gold);
  const auto sft = total_reward_rel(read_fixture("furnace_sft.txt"), doc, gold);
  EXPECT_EQ(grpo.term("r_fmt"), 1.0);
  EXPECT_EQ(sft.term("r_fmt"), 1.0);

  // Property "temperatures" against the 11-token gold property.
  const double mp = oracle::multiset_prf("temperatures", gold[0].measured_property->surface)[2];
  EXPECT_DOUBLE_EQ(mp, 2.0 / 12.0);
  // GRPO: entity, unit, modifiers recovered; property below threshold.
  EXPECT_NEAR(grpo.term("r_comp"), 0.2 * 3 + 0.5 * (1 + 1 + 1 + 2 * 1 + 2 * mp + 3), 1e-12);
  // SFT: the entity lands inside the property span and earns nothing.
  EXPECT_NEAR(sft.term("r_comp"), 0.2 * 2 + 0.5 * (1 + 1 + 1 + 2 * 0 + 2 * mp + 3), 1e-12);
  // Pooled pairs: quantity (5 tokens), entity, property (1 vs 11 tokens).
  EXPECT_NEAR(grpo.term("r_mis"), 2.0 * 7 / (7 + 17) - 0.0, 1e-12);
  EXPECT_NEAR(sft.term("r_mis"), 2.0 * 6 / (7 + 17) - (1 - 6.0 / 7), 1e-12);
  EXPECT_GT(grpo.total, sft.total);
  EXPECT_GT(grpo.term("r_comp"), sft.term("r_comp"));
  EXPECT_GT(grpo.term("r_mis"), sft.term("r_mis"));
}

TEST(TotalRewardRel, EmptyGenerationAndDeterminism) {
  const Document doc = furnace_document();
  const std::vector<MeasurementGroup> gold = {furnace_gold_group()};
  const auto e = total_reward_rel("", doc, gold);
  EXPECT_EQ(e.term("r_fmt"), 0.0);
  EXPECT_EQ(e.term("r_comp"), 0.0);
  EXPECT_EQ(e.term("r_mis"), -1.0);
  EXPECT_EQ(e.total, -1.0);
  const std::string g = read_fixture("furnace_grpo.txt");
  EXPECT_EQ(total_reward_rel(g, doc, gold), total_reward_rel(g, doc, gold));
}

TEST(TotalRewardRel, RandomNarrativesDecompose) {
  std::mt19937 rng(31337);
  for (int t = 0; t < 500; ++t) {
    const auto sd = synthetic::make_document(rng, "d", 1 + static_cast<int>(rng() % 3));
    auto gold = assemble_groups(sd.gold).groups;
    std::string evidence, analysis;
    for (const auto& s : segment_sentences(sd.doc.text)) {
      if (rng() % 5) evidence += utf8::substr(sd.doc.text, s.start, s.end) + "\n";
    }
    for (const auto& g : gold) {
      if (rng() % 4 == 0) continue;
      analysis += analysis_for(without(g, static_cast<unsigned>(rng() % 8))) + " ";
    }
    if (rng() % 6 == 0) analysis += "[stray";
    const std::string gen = "<EVIDENCE>\n" + evidence + "</EVIDENCE>\n<ANALYSIS>\n" + analysis + "\n</ANALYSIS>\n";
    RelationRewardConfig cfg;
    std::uniform_real_distribution<double> u(0.0, 2.0);
    if (t % 2) {
      cfg.w1 = u(rng);
      cfg.w2 = u(rng);
      cfg.w3 = u(rng);
      cfg.lambda_step = u(rng);
      cfg.beta_full = u(rng);
      cfg.lambda_exp = u(rng);
    }
    const auto b = total_reward_rel(gen, sd.doc, gold, cfg);
    ASSERT_EQ(b.terms.size(), 3u);
    EXPECT_EQ(b.total, cfg.w1 * b.terms[0].value + cfg.w2 * b.terms[1].value + cfg.w3 * b.terms[2].value);
    const auto parsed = parse_relation_narrative(gen, sd.doc);
    const bool ok = parsed.verdict.well_formed && !evidence.empty() && parsed.narrative.all_grounded();
    EXPECT_EQ(b.term("r_fmt"), ok ? 1.0 : 0.0);
    if (analysis.find("[stray") != std::string::npos) EXPECT_EQ(b.term("r_fmt"), 0.0);
    EXPECT_EQ(b, total_reward_rel(gen, sd.doc, gold, cfg));
  }
}

TEST(AlignGroups, EqualsBruteForceOnQuantityCredit) {
  std::mt19937 rng(8080);
  for (int t = 0; t < 300; ++t) {
    const int ng = static_cast<int>(rng() % 6), np = static_cast<int>(rng() % 6);
    auto inst = oracle::random_instance(rng, ng, np);
    std::vector<MeasurementGroup> golds, preds;
    for (const auto& a : inst.golds) golds.push_back({0, a, {}, {}, {}, {}, {}});
    for (const auto& a : inst.preds) preds.push_back({0, a, {}, {}, {}, {}, {}});
    const auto al = align_groups(preds, golds);
    Rational total;
    for (const auto& p : al.pairs) total = total + p.quantity_credit;
    const Rational want = oracle::brute_force_credit(inst.preds, inst.golds, [](const auto& p, const auto& g) {
      return oracle::credit(p, g, MatchCriterion::Relaxed);
    });
    ASSERT_EQ(total, want) << t;
    EXPECT_EQ(al.pairs.size() + al.unmatched_gold.size(), golds.size());
    EXPECT_EQ(al.pairs.size() + al.unmatched_pred.size(), preds.size());
  }
}

TEST(RelationConfig, UnknownKeysAndComponentWeights) {
  auto c = RelationRewardConfig::from_json({{"component_weights", {{"Qualifier", 5.0}}}});
  EXPECT_EQ(c.component_weights.at(AnnotationClass::Qualifier), 5.0);
  EXPECT_EQ(c.component_weights.at(AnnotationClass::MeasuredEntity), 2.0);
  EXPECT_THROW(RelationRewardConfig::from_json({{"component_weights", {{"HasQuantity", 1.0}}}}), ConfigError);
  EXPECT_THROW(RelationRewardConfig::from_json({{"lambda", 1.0}}), ConfigError);
  EXPECT_THROW(RelationRewardConfig::from_json({{"recover_threshold", 1.5}}), ConfigError);
  EXPECT_EQ(RelationRewardConfig::from_json(c.to_json()).to_json(), c.to_json());
}
