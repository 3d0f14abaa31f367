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

// Computes both reward phases for hand-written generations on one document.

#include <iostream>

#include "measqc/reward_quantity.hpp"
#include "measqc/reward_relation.hpp"

namespace {

const char* kText =
    "Samples were then annealed in air in a pre-heated furnace at temperatures up to 798 °C for 2 h.";

measqc::Annotation span(const std::string& id, measqc::AnnotationClass cls, std::size_t a, std::size_t b,
                        const std::string& surface) {
  measqc::Annotation x;
  x.doc_id = "d";
  x.annot_set = 1;
  x.cls = cls;
  x.annot_id = id;
  x.span = measqc::Span{a, b};
  x.surface = surface;
  return x;
}

void print(const char* label, const measqc::RewardBreakdown& b) {
  std::cout << label << ": " << measqc::to_json(b).dump() << "\n";
}

}  // namespace

int main() {
  using measqc::AnnotationClass;
  const measqc::Document doc{"d", kText};
  auto q = span("T1", AnnotationClass::Quantity, 74, 86, "up to 798 °C");
  q.attributes["unit"] = std::string("°C");
  q.attributes["mods"] = std::vector<std::string>{"IsRange"};
  auto me = span("T2", AnnotationClass::MeasuredEntity, 0, 7, "Samples");
  measqc::Annotation rel;
  rel.doc_id = "d";
  rel.annot_set = 1;
  rel.cls = AnnotationClass::HasQuantity;
  rel.annot_id = "T3";
  rel.source_id = "T2";
  rel.target_id = "T1";
  const std::vector<measqc::Annotation> gold = {q, me, rel};

  const std::string trace =
      "<ARABIC-QUANTITY>\nA number with a temperature unit.\n</ARABIC-QUANTITY>\n"
      "<NUMERIC-QUANTITY>\nNone.\n</NUMERIC-QUANTITY>\n<TIME-QUANTITY>\nNone.\n</TIME-QUANTITY>\n"
      "<CHANGE-QUANTITY>\nNone.\n</CHANGE-QUANTITY>\n<FORMULA-QUANTITY>\nNone.\n</FORMULA-QUANTITY>\n"
      "<CONCLUSION>\nup to 798 °C\t°C\tIsRange\n</CONCLUSION>\n";
  print("quantity, exact", measqc::total_reward(trace, gold));
  print("quantity, empty", measqc::total_reward("", gold));

  const std::string narrative = std::string("<EVIDENCE>\n") + kText +
                                "\n</EVIDENCE>\n<ANALYSIS>\nWe can find the quantity with surface form "
                                "[up to 798 °C], it has unit [°C]. The modifier for the quantity are [IsRange]. "
                                "This quantity is used to describe the entity [Samples].\n</ANALYSIS>\n";
  const auto groups = measqc::assemble_groups(gold).groups;
  print("relation, exact", measqc::total_reward_rel(narrative, doc, groups));
  print("relation, empty", measqc::total_reward_rel("", doc, groups));
}
