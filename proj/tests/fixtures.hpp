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

// Fixture access shared by the test binaries.

#pragma once

#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "measqc/annotation.hpp"

namespace measqc::fixtures {

inline std::string fixture_path(const std::string& name) {
  return std::string(MEASQC_SOURCE_DIR) + "/tests/fixtures/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw Error("missing fixture " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::map<std::string, Document> furnace_documents() {
  std::istringstream in(read_fixture("furnace_docs.tsv"));
  return load_documents_tsv(in);
}

inline Document furnace_document() { return furnace_documents().begin()->second; }

inline Corpus furnace_gold() {
  const auto docs = furnace_documents();
  return load_measeval_tsv(read_fixture("furnace_gold.tsv"), &docs);
}

}  // namespace measqc::fixtures
