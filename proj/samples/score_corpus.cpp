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

// Scores a prediction TSV against a gold TSV and prints the per-class table.

#include <fstream>
#include <iostream>

#include "measqc/scorer.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: score_corpus PRED.tsv GOLD.tsv\n";
    return 3;
  }
  try {
    std::ifstream p(argv[1]), g(argv[2]);
    if (!p || !g) throw measqc::IoError("cannot open input");
    const auto pred = measqc::load_measeval_tsv(p);
    const auto gold = measqc::load_measeval_tsv(g);
    for (auto c : {measqc::MatchCriterion::Strict, measqc::MatchCriterion::Relaxed}) {
      const auto report = measqc::score_report(pred, gold, c);
      std::cout << "== " << measqc::to_string(c) << "\n" << measqc::format_table(report);
    }
  } catch (const measqc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
