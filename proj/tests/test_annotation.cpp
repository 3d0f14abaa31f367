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

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "measqc/annotation.hpp"
#include "synthetic.hpp"

namespace measqc {
namespace {

const std::string kHeader = "docId\tannotSet\tannotType\tstartOffset\tendOffset\tannotId\ttext\tother\n";

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> tsv_fixtures() {
  return {fixtures::fixture_path("furnace_gold.tsv"), std::string(MEASQC_SOURCE_DIR) + "/data/samples/gold.tsv"};
}

template <typename F>
ParseError expect_parse_error(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no ParseError thrown";
  return ParseError("none");
}

TEST(Annotation, RoundTripOnFixtures) {
  for (const auto& path : tsv_fixtures()) {
    SCOPED_TRACE(path);
    const std::string text = slurp(path);
    const Corpus once = load_measeval_tsv(text);
    ASSERT_GT(once.size(), 0u);
    const std::string written = write_measeval_tsv(once);
    const Corpus twice = load_measeval_tsv(written);
    EXPECT_EQ(twice.annotations, once.annotations);
    EXPECT_EQ(write_measeval_tsv(twice), written);
    // Same row multiset as the source, field for field.
    EXPECT_EQ(twice.size(), once.size());
    std::size_t rows = 0;
    for (char ch : text) rows += ch == '\n';
    EXPECT_EQ(once.size(), rows - 1);
  }
}

TEST(Annotation, RoundTripOnSyntheticCorpora) {
  for (std::uint32_t seed = 1; seed <= 50; ++seed) {
    const Corpus c = synthetic::make_corpus(seed, 4);
    const std::string written = write_measeval_tsv(c);
    const Corpus loaded = load_measeval_tsv(written, &c.documents);
    EXPECT_EQ(loaded.annotations, c.annotations) << seed;
    EXPECT_EQ(write_measeval_tsv(loaded), written) << seed;
  }
}

TEST(Annotation, OffsetsCountCodePoints) {
  const Corpus gold = fixtures::furnace_gold();
  const auto docs = fixtures::furnace_documents();
  const Corpus checked = load_measeval_tsv(write_measeval_tsv(gold), &docs);
  const auto& q = checked.of("furnace-anneal").front();
  ASSERT_EQ(q.cls, AnnotationClass::Quantity);
  EXPECT_EQ(q.surface, "up to 798 °C");
  EXPECT_EQ(q.span->length(), 12u);  // 13 bytes, 12 code points
  EXPECT_EQ(q.unit(), "°C");
  EXPECT_EQ(q.modifiers(), std::vector<std::string>{"IsRange"});
}

TEST(Annotation, ToleratesBomCrlfAndSevenColumns) {
  const std::string text = "\xEF\xBB\xBF" + kHeader.substr(0, kHeader.size() - 1) + "\r\n" +
                           "d\t1\tMeasuredEntity\t0\t3\tT1\tabc\r\n";
  const Corpus c = load_measeval_tsv(text);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(c.of("d").front().attributes.empty());
}

TEST(Annotation, ParseErrorsCarryLineAndColumn) {
  auto e = expect_parse_error([] { load_measeval_tsv("docId\tset\n"); });
  EXPECT_EQ(e.line(), 1u);
  e = expect_parse_error([] { load_measeval_tsv(kHeader + "d\t1\tNumber\t0\t3\tT1\tabc\t\n"); });
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 3u);
  e = expect_parse_error([] { load_measeval_tsv(kHeader + "d\t1\tQuantity\t0\t3\tT1\tabc\t{bad\n"); });
  EXPECT_EQ(e.column(), 8u);
  e = expect_parse_error([] { load_measeval_tsv(kHeader + "d\t1\tQuantity\tx\t3\tT1\tabc\t\n"); });
  EXPECT_EQ(e.column(), 4u);
  e = expect_parse_error([] { load_measeval_tsv(kHeader + "d\t1\tQuantity\t3\t3\tT1\tabc\t\n"); });
  EXPECT_NE(std::string(e.what()).find("startOffset"), std::string::npos);
  e = expect_parse_error(
      [] { load_measeval_tsv(kHeader + "d\t1\tHasQuantity\t\t\tT2\t\t{\"source\": \"T1\"}\n"); });
  EXPECT_NE(std::string(e.what()).find("target"), std::string::npos);
  e = expect_parse_error([] { load_measeval_tsv(kHeader + "d\t1\tQuantity\t0\t3\n"); });
  EXPECT_EQ(e.line(), 2u);
}

TEST(Annotation, ValidationNamesOffendingIds) {
  const std::map<std::string, Document> docs = {{"d", Document{"d", "abc def"}}};
  try {
    load_measeval_tsv(kHeader + "d\t1\tQuantity\t0\t3\tT1\tabd\t\n", &docs);
    FAIL() << "surface mismatch accepted";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.ids(), std::vector<std::string>{"d/T1"});
    EXPECT_NE(std::string(e.what()).find("surface differs"), std::string::npos);
  }
  try {
    load_measeval_tsv(kHeader + "d\t1\tQuantity\t5\t9\tT1\tdef!\t\n", &docs);
    FAIL() << "offset beyond text accepted";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.ids(), std::vector<std::string>{"d/T1"});
  }
  try {
    load_measeval_tsv(kHeader + "d\t1\tHasQuantity\t\t\tT3\t\t{\"source\": \"T1\", \"target\": \"T2\"}\n");
    FAIL() << "dangling relation accepted";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.ids(), (std::vector<std::string>{"d/T3", "d/T3"}));
  }
  try {
    load_measeval_tsv(kHeader + "d\t1\tQuantity\t0\t3\tT1\tabc\t\nd\t2\tQuantity\t4\t7\tT1\tdef\t\n");
    FAIL() << "duplicate id accepted";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.ids(), std::vector<std::string>{"d/T1"});
  }
  // The writer refuses what the reader would refuse.
  Corpus bad;
  Annotation a;
  a.doc_id = "d";
  a.annot_set = 1;
  a.cls = AnnotationClass::HasQuantity;
  a.annot_id = "R1";
  a.source_id = "T9";
  a.target_id = "T8";
  bad.add(a);
  EXPECT_THROW(write_measeval_tsv(bad), ValidationError);
}

TEST(Annotation, GroupsBySet) {
  const Corpus gold = load_measeval_tsv(slurp(std::string(MEASQC_SOURCE_DIR) + "/data/samples/gold.tsv"));
  const auto g = assemble_groups(gold.of("copper-film"));
  ASSERT_EQ(g.groups.size(), 2u);
  EXPECT_TRUE(g.orphans.empty());
  EXPECT_EQ(g.groups[0].quantity.surface, "approximately 120 nm");
  ASSERT_TRUE(g.groups[0].measured_entity);
  EXPECT_EQ(g.groups[0].measured_entity->surface, "The copper film");
  ASSERT_TRUE(g.groups[0].measured_property);
  ASSERT_EQ(g.groups[0].qualifiers.size(), 1u);
  EXPECT_EQ(g.groups[0].relations.size(), 3u);
  EXPECT_EQ(g.groups[0].members().size(), 7u);
  EXPECT_EQ(g.groups[1].quantity.surface, "300 K");
  EXPECT_FALSE(g.groups[1].measured_property);

  const Corpus two = load_measeval_tsv(kHeader + "d\t1\tQuantity\t0\t3\tT1\tabc\t\nd\t1\tQuantity\t4\t7\tT2\tdef\t\n");
  EXPECT_THROW(assemble_groups(two.of("d")), ValidationError);
  const Corpus orphan = load_measeval_tsv(kHeader + "d\t4\tMeasuredEntity\t0\t3\tT1\tabc\t\n");
  EXPECT_EQ(assemble_groups(orphan.of("d")).orphans.size(), 1u);
}

TEST(Annotation, ClassNamesRoundTrip) {
  for (auto c : kAllClasses) EXPECT_EQ(class_from_string(to_string(c)), c);
  EXPECT_FALSE(class_from_string("quantity"));
  EXPECT_EQ(kSpanClasses.size() + kRelationClasses.size(), kAllClasses.size());
}

TEST(Annotation, DocumentsTsv) {
  std::istringstream ok("docId\ttext\na\tone\nb\ttwo\tstill two\n");
  const auto docs = load_documents_tsv(ok);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs.at("b").text, "two\tstill two");
  std::istringstream dup("a\tx\na\ty\n");
  EXPECT_THROW(load_documents_tsv(dup), ParseError);
  std::istringstream notab("just text\n");
  EXPECT_THROW(load_documents_tsv(notab), ParseError);
}

}  // namespace
}  // namespace measqc
