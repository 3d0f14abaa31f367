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

// Extracts quantities from text given on the command line or stdin.

#include <iostream>
#include <iterator>
#include <string>

#include "measqc/quantity_parser.hpp"

int main(int argc, char** argv) {
  std::string text;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) text += (i > 1 ? " " : "") + std::string(argv[i]);
  } else {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  }
  for (const auto& q : measqc::extract_quantities(text)) {
    std::cout << q.span.start << "-" << q.span.end << "\t" << q.surface << "\tvalue=" << q.value
              << "\tunit=" << (q.unit ? *q.unit : "-");
    for (const auto& m : q.modifiers) std::cout << "\t" << m;
    std::cout << "\n";
  }
  for (const char* probe : {"Fig. 4", "4S RNA"}) {
    for (const auto& hit : measqc::out_of_scope_hits(probe)) {
      std::cout << "# out of scope: " << probe << " (" << hit.pattern->pattern_id << ")\n";
    }
  }
}
