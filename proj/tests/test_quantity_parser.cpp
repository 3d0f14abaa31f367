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
#include <random>
#include <sstream>

#include "measqc/quantity_parser.hpp"

using namespace measqc;

namespace {

std::string slurp(const std::string& rel) {
  std::ifstream in(std::string(MEASQC_SOURCE_DIR) + "/" + rel, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Decimal string mantissa times 10^exp, evaluated as an exact decimal
// string and only then converted.
double decimal_oracle(std::string mantissa, int exp) {
  std::string digits;
  int frac = 0;
  bool seen_dot = false;
  for (char c : mantissa) {
    if (c == '.') {
      seen_dot = true;
      continue;
    }
    digits.push_back(c);
    if (seen_dot) ++frac;
  }
  int shift = exp - frac;
  if (shift >= 0) {
    digits.append(static_cast<std::size_t>(shift), '0');
    return std::stod(digits);
  }
  while (static_cast<int>(digits.size()) <= -shift) digits.insert(digits.begin(), '0');
  digits.insert(digits.end() + shift, '.');
  return std::stod(digits);
}

const std::vector<std::string> kCorpus = {
    "Samples were then annealed in air in a pre-heated furnace at temperatures up to 798 °C "
    "for times chosen to ensure complete iron diffusion through the sample.",
    "ADD toluene (100 mg) then heat to 70 m mark",
    "The film thickness was 5 ± 0.2 nm and the gap was approximately 3.5 µm wide.",
    "Cells were incubated for 24 h at 37 °C in 5% CO2, see Fig. 4 and Table 2.",
    "The 4S RNA fraction migrated between 2 and 3 cm after twenty minutes.",
    "Values ranged from 10 to 20 mg/L, with a mean of 15 mg/L [12].",
    "Pressure increased by 1.2×10^3 Pa over 30 s; at least 12 samples were tested.",
    "The COVID-19 cohort (n = 120) had a median of 64 years.",
    "A 300K anneal and a 5th trial at ~0.5 mL/min gave 1,250 counts.",
};

}  // namespace

TEST(NormalizeNumber, DocumentedCases) {
  EXPECT_EQ(normalize_number("798"), 798.0);
  EXPECT_EQ(normalize_number("0"), 0.0);
  EXPECT_EQ(normalize_number("1.2×10^3"), decimal_oracle("1.2", 3));
  EXPECT_EQ(normalize_number("1.2e3"), 1200.0);
  EXPECT_EQ(normalize_number("1,234,567"), 1234567.0);
  EXPECT_EQ(normalize_number("-0.25"), -0.25);
  EXPECT_EQ(normalize_number("twenty-five"), 25.0);
  EXPECT_EQ(normalize_number("three hundred and five"), 305.0);
  EXPECT_EQ(normalize_number("10⁻³"), 0.001);
  EXPECT_THROW(normalize_number("abc"), ParseError);
  EXPECT_THROW(normalize_number("1.2.3"), ParseError);
  EXPECT_THROW(normalize_number("twenty-hundred"), ParseError);
}

TEST(NormalizeNumber, ScientificNotationMatchesDecimalOracle) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> digit(0, 9), exp(-6, 6), len(1, 4);
  for (int trial = 0; trial < 500; ++trial) {
    std::string mant = std::to_string(digit(rng) + 1);
    const int n = len(rng);
    mant += ".";
    for (int k = 0; k < n; ++k) mant += static_cast<char>('0' + digit(rng));
    const int e = exp(rng);
    const double want = decimal_oracle(mant, e);
    EXPECT_EQ(normalize_number(mant + "×10^" + std::to_string(e)), want) << mant << " " << e;
    EXPECT_EQ(normalize_number(mant + "e" + std::to_string(e)), want) << mant << " " << e;
  }
}

TEST(ExtractQuantities, FurnaceSentence) {
  auto qs = extract_quantities(kCorpus[0]);
  ASSERT_EQ(qs.size(), 1u);
  EXPECT_EQ(qs[0].surface, "up to 798 °C");
  EXPECT_EQ(qs[0].value, 798.0);
  ASSERT_TRUE(qs[0].unit);
  EXPECT_EQ(qs[0].unit_surface, "°C");
  EXPECT_EQ(qs[0].modifiers, std::vector<std::string>{"IsRange"});
  ASSERT_TRUE(qs[0].range);
  EXPECT_FALSE(qs[0].range->low);
  EXPECT_EQ(qs[0].range->high, 798.0);
}

TEST(ExtractQuantities, ChemicalActionSequence) {
  auto qs = extract_quantities(kCorpus[1]);
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0].surface, "100 mg");
  EXPECT_EQ(qs[0].value, 100.0);
  EXPECT_EQ(qs[0].unit_surface, "mg");
  EXPECT_EQ(qs[1].surface, "70 m");
  EXPECT_EQ(qs[1].value, 70.0);
  EXPECT_EQ(qs[1].unit_surface, "m");
}

TEST(ExtractQuantities, NoNumbers) { EXPECT_TRUE(extract_quantities("no numbers here").empty()); }

TEST(ExtractQuantities, CuesRangesTolerance) {
  auto qs = extract_quantities(kCorpus[2]);
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0].surface, "5 ± 0.2 nm");
  EXPECT_EQ(qs[0].tolerance, 0.2);
  EXPECT_EQ(qs[0].modifiers, std::vector<std::string>{"HasTolerance"});
  EXPECT_EQ(qs[1].surface, "approximately 3.5 µm");
  EXPECT_EQ(qs[1].modifiers, std::vector<std::string>{"IsApproximate"});

  qs = extract_quantities(kCorpus[4]);
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0].surface, "between 2 and 3 cm");
  EXPECT_EQ(qs[0].range, (ValueRange{2.0, 3.0}));
  EXPECT_EQ(qs[1].surface, "twenty minutes");
  EXPECT_EQ(qs[1].kind, QuantityKind::NumericWord);

  qs = extract_quantities(kCorpus[5]);
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0].surface, "from 10 to 20 mg/L");
  EXPECT_EQ(qs[0].modifiers, std::vector<std::string>{"IsRange"});
  EXPECT_EQ(qs[1].surface, "mean of 15 mg/L");
  EXPECT_EQ(qs[1].modifiers, std::vector<std::string>{"IsMean"});

  qs = extract_quantities("The tip moved ~5 nm and 10-20 K.");
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0].surface, "~5 nm");
  EXPECT_EQ(qs[0].modifiers, std::vector<std::string>{"IsApproximate"});
  EXPECT_EQ(qs[1].surface, "10-20 K");
  EXPECT_EQ(qs[1].range, (ValueRange{10.0, 20.0}));
}

TEST(ExtractQuantities, OutOfScopeNumeralsAreSkipped) {
  auto qs = extract_quantities(kCorpus[3]);
  std::vector<std::string> surfaces;
  for (const auto& q : qs) surfaces.push_back(q.surface);
  EXPECT_EQ(surfaces, (std::vector<std::string>{"24 h", "37 °C", "5%"}));
  EXPECT_EQ(qs[0].kind, QuantityKind::Time);

  qs = extract_quantities(kCorpus[8]);
  surfaces.clear();
  for (const auto& q : qs) surfaces.push_back(q.surface);
  EXPECT_EQ(surfaces, (std::vector<std::string>{"300K", "~0.5 mL/min", "1,250"}));
}

TEST(ExtractQuantities, ChangeAndFormulaKinds) {
  auto qs = extract_quantities(kCorpus[6]);
  ASSERT_GE(qs.size(), 2u);
  EXPECT_EQ(qs[0].surface, "1.2×10^3 Pa");
  EXPECT_EQ(qs[0].value, 1200.0);
  EXPECT_EQ(qs[0].kind, QuantityKind::Change);
  qs = extract_quantities(kCorpus[7]);
  ASSERT_FALSE(qs.empty());
  EXPECT_EQ(qs[0].surface, "120");
  EXPECT_EQ(qs[0].kind, QuantityKind::Formula);
}

TEST(ExtractQuantities, SpanFidelitySoundnessDeterminism) {
  for (const auto& text : kCorpus) {
    const auto qs = extract_quantities(text);
    EXPECT_EQ(qs, extract_quantities(text));
    std::size_t last_end = 0;
    for (const auto& q : qs) {
      EXPECT_EQ(utf8::substr(text, q.span.start, q.span.end), q.surface);
      EXPECT_GE(q.span.start, last_end);
      last_end = q.span.end;
      if (q.unit) EXPECT_NE(q.surface.find(q.unit_surface), std::string::npos);
      if (q.range && q.range->low && q.range->high) EXPECT_LE(*q.range->low, *q.range->high);
      auto v = validate_span(q.surface);
      ASSERT_TRUE(v) << q.surface;
      EXPECT_EQ(v->value, q.value) << q.surface;
      EXPECT_EQ(v->unit, q.unit) << q.surface;
    }
  }
}

TEST(ValidateSpan, GoldCases) {
  auto q = validate_span("up to 798 °C");
  ASSERT_TRUE(q);
  EXPECT_EQ(q->value, 798.0);
  EXPECT_EQ(q->unit_surface, "°C");
  EXPECT_EQ(q->modifiers, std::vector<std::string>{"IsRange"});
  EXPECT_FALSE(validate_span(""));
  EXPECT_FALSE(validate_span("   "));
  EXPECT_FALSE(validate_span("Fig. 4"));
  EXPECT_FALSE(validate_span("4S RNA"));
  EXPECT_FALSE(validate_span("[12]"));
  EXPECT_FALSE(validate_span("furnace"));
  ASSERT_TRUE(validate_span("five"));
  EXPECT_EQ(validate_span("five")->value, 5.0);
  ASSERT_TRUE(validate_span("Samples annealed up to 798 °C"));
}

TEST(OutOfScope, DocumentedHits) {
  auto hits = out_of_scope_hits("Fig. 4");
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].pattern->pattern_id, "figure-citation");
  hits = out_of_scope_hits("4S RNA");
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].pattern->pattern_id, "digit-in-nomenclature");
  EXPECT_EQ(hits[0].matched, "4S");
  EXPECT_TRUE(out_of_scope_hits("798 °C").empty());
  EXPECT_TRUE(out_of_scope_hits("300K").empty());
  EXPECT_EQ(out_of_scope_hits("see [12]").size(), 1u);
}

TEST(OutOfScope, PatternSelfTest) {
  const auto& parser = default_parser();
  const auto failures = parser.patterns().self_test(parser.units());
  for (const auto& f : failures) ADD_FAILURE() << f.pattern_id << ": " << f.message;
  // Exclusivity: a figure-citation example never validates as a quantity.
  for (const auto& p : parser.patterns().patterns()) {
    EXPECT_FALSE(validate_span(p.positive_example)) << p.pattern_id;
  }
}

TEST(DataFiles, EmbeddedCopiesMatch) {
  EXPECT_EQ(slurp("data/units.tsv"), data::kUnitLexicon);
  EXPECT_EQ(slurp("data/scope_patterns.tsv"), data::kScopePatterns);
  EXPECT_EQ(slurp("data/templates/p_aug.txt"), data::kAugTemplate);
  EXPECT_EQ(slurp("data/templates/p_trace.txt"), data::kTraceTemplate);
}

TEST(UnitLexicon, LongestMatchAndCase) {
  const auto& lex = UnitLexicon::builtin();
  EXPECT_GE(lex.size(), 200u);
  EXPECT_TRUE(lex.is_unit("°C"));
  EXPECT_TRUE(lex.is_unit("mg"));
  EXPECT_TRUE(lex.is_unit("wt%"));
  EXPECT_TRUE(lex.is_unit("mL/min"));
  EXPECT_TRUE(lex.is_unit("Minutes"));
  EXPECT_TRUE(lex.is_unit("mM"));
  EXPECT_FALSE(lex.is_unit("MM"));
  EXPECT_FALSE(lex.is_unit("S"));
  auto m = lex.match(U"mL/min flow", 0);
  ASSERT_TRUE(m);
  EXPECT_EQ(m->length, 6u);
}

TEST(UnitLexicon, CustomFileOverridesAndErrors) {
  auto lex = UnitLexicon::parse("# test\nfoo\tfoo unit\tcount\n");
  EXPECT_TRUE(lex.is_unit("foo"));
  EXPECT_THROW(UnitLexicon::parse("only-one-column\n"), ParseError);
  QuantityParser p(lex, ScopePatternTable::builtin());
  auto qs = p.extract_quantities("we saw 3 foo and 4 mg");
  ASSERT_EQ(qs.size(), 2u);
  EXPECT_EQ(qs[0].surface, "3 foo");
  EXPECT_EQ(qs[1].surface, "4");
}
