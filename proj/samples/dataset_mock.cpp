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

// Builds augmentation candidates with the deterministic mock client.

#include <iostream>

#include "measqc/dataset.hpp"

int main() {
  std::vector<measqc::Document> docs = {
      {"a", "The copper film had a thickness of approximately 120 nm."},
      {"b", "Fig. 4 shows the gel."},
      {"c", "The substrate was held at 300 K for 2 h."},
  };
  measqc::MockClient mock({0.0, 0.5});
  measqc::PipelineOptions opts;
  opts.params.seed = 7;
  const auto out =
      measqc::build_aug_candidates(docs, mock, measqc::PromptTemplate::builtin(measqc::TemplateId::Aug), opts);
  for (const auto& ex : out) std::cout << measqc::to_json(ex).dump() << "\n";
  std::cout << "# " << measqc::to_json(measqc::count_statuses(out)).dump() << "\n";
}
