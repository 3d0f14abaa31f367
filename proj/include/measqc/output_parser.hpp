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

// Readers for the two generation formats.
//
// Quantity trace: six tagged sections in fixed order,
//
//   <ARABIC-QUANTITY>...</ARABIC-QUANTITY>
//   <NUMERIC-QUANTITY>...</NUMERIC-QUANTITY>
//   <TIME-QUANTITY>...</TIME-QUANTITY>
//   <CHANGE-QUANTITY>...</CHANGE-QUANTITY>
//   <FORMULA-QUANTITY>...</FORMULA-QUANTITY>
//   <CONCLUSION>surface<TAB>unit<TAB>modifiers ...</CONCLUSION>
//
// Relation narrative: an optional <EVIDENCE> block (one source sentence per
// line) and an <ANALYSIS> block of cue phrases followed by bracketed fields:
//
//   We can find the quantity with surface form [70 m], it has unit [m].
//   This quantity is used to describe the entity [the well].
//
// Without <ANALYSIS> tags the whole text outside <EVIDENCE> is read as the
// analysis.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "measqc/annotation.hpp"
#include "measqc/error.hpp"
#include "measqc/utf8.hpp"

namespace measqc {

inline constexpr std::array<std::string_view, 6> kTraceSections = {
    "ARABIC-QUANTITY", "NUMERIC-QUANTITY", "TIME-QUANTITY",
    "CHANGE-QUANTITY", "FORMULA-QUANTITY", "CONCLUSION",
};

struct Violation {
  std::string rule;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct FormatVerdict {
  bool well_formed = true;
  std::vector<Violation> violations;

  void add(std::string rule, std::string message) {
    violations.push_back({std::move(rule), std::move(message)});
    well_formed = false;
  }
  bool has(std::string_view rule) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.rule == rule; });
  }
};

struct ConclusionRow {
  std::string surface;
  std::optional<std::string> unit;
  std::vector<std::string> modifiers;

  friend bool operator==(const ConclusionRow&, const ConclusionRow&) = default;
};

struct RowError {
  std::size_t line = 0;  // 1-based within the conclusion body
  std::string message;
};

struct ConclusionParse {
  std::vector<ConclusionRow> rows;
  std::vector<RowError> errors;
};

struct QuantityTrace {
  // Bodies of the sections that were properly opened and closed, in the
  // order they appear.
  std::vector<std::pair<std::string, std::string>> sections;
  std::vector<ConclusionRow> conclusion_rows;
  std::vector<RowError> row_errors;

  const std::string* section(std::string_view name) const {
    for (const auto& [n, body] : sections) {
      if (n == name) return &body;
    }
    return nullptr;
  }
};

struct TagEvent {
  std::string name;
  bool closing = false;
  std::size_t offset = 0;  // byte offset of '<'

  friend bool operator==(const TagEvent& a, const TagEvent& b) {
    return a.name == b.name && a.closing == b.closing;
  }
};

// Every known section tag in the generation, in order of appearance.
inline std::vector<TagEvent> scan_section_tags(std::string_view text) {
  std::vector<TagEvent> out;
  for (std::size_t p = text.find('<'); p != std::string_view::npos; p = text.find('<', p + 1)) {
    const bool closing = p + 1 < text.size() && text[p + 1] == '/';
    const std::size_t name_start = p + (closing ? 2 : 1);
    for (auto name : kTraceSections) {
      if (text.compare(name_start, name.size(), name) == 0 &&
          name_start + name.size() < text.size() && text[name_start + name.size()] == '>') {
        out.push_back({std::string(name), closing, p});
        break;
      }
    }
  }
  return out;
}

inline const std::vector<TagEvent>& canonical_tag_sequence() {
  static const std::vector<TagEvent> seq = [] {
    std::vector<TagEvent> s;
    for (auto name : kTraceSections) {
      s.push_back({std::string(name), false, 0});
      s.push_back({std::string(name), true, 0});
    }
    return s;
  }();
  return seq;
}

namespace detail {

inline std::vector<std::string> split_modifiers(const std::string& field, std::string* error) {
  std::vector<std::string> out;
  const std::string f = utf8::trim(field);
  if (f.empty()) return out;
  if (f.front() == '[') {
    auto j = nlohmann::json::parse(f, nullptr, false);
    if (j.is_discarded() || !j.is_array()) {
      *error = "modifier list is not a JSON array";
      return out;
    }
    for (const auto& v : j) {
      if (!v.is_string()) {
        *error = "modifier list holds a non-string";
        return {};
      }
      out.push_back(v.get<std::string>());
    }
    return out;
  }
  for (auto& part : utf8::split(f, ',')) {
    std::string m = utf8::trim(part);
    if (m.size() >= 2 && m.front() == '"' && m.back() == '"') m = m.substr(1, m.size() - 2);
    if (!m.empty()) out.push_back(m);
  }
  return out;
}

}  // namespace detail

// Rows of a conclusion block. Bad rows are reported and skipped.
inline ConclusionParse parse_conclusion(std::string_view body) {
  ConclusionParse out;
  std::istringstream in{std::string(body)};
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (utf8::trim(line).empty()) continue;
    auto cols = utf8::split(line, '\t');
    if (first) {
      first = false;
      if (utf8::ascii_lower(utf8::trim(cols[0])) == "surface") continue;
    }
    if (cols.size() > 3) {
      out.errors.push_back({line_no, "expected at most 3 columns, found " +
                                         std::to_string(cols.size())});
      continue;
    }
    ConclusionRow row;
    row.surface = utf8::normalize_whitespace(cols[0]);
    if (row.surface.empty()) {
      out.errors.push_back({line_no, "empty surface"});
      continue;
    }
    if (cols.size() > 1) {
      std::string u = utf8::trim(cols[1]);
      if (!u.empty()) row.unit = u;
    }
    if (cols.size() > 2) {
      std::string err;
      row.modifiers = detail::split_modifiers(cols[2], &err);
      if (!err.empty()) {
        out.errors.push_back({line_no, err});
        continue;
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

inline std::string format_conclusion_rows(const std::vector<ConclusionRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    out += r.surface;
    out += '\t';
    out += r.unit.value_or("");
    out += '\t';
    for (std::size_t i = 0; i < r.modifiers.size(); ++i) {
      if (i) out += ',';
      out += r.modifiers[i];
    }
    out += '\n';
  }
  return out;
}

inline QuantityTrace parse_quantity_trace(std::string_view generation) {
  QuantityTrace t;
  const auto tags = scan_section_tags(generation);
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i].closing || t.section(tags[i].name)) continue;
    for (std::size_t j = i + 1; j < tags.size(); ++j) {
      if (tags[j].name != tags[i].name) continue;
      if (!tags[j].closing) break;
      const std::size_t body_start = tags[i].offset + tags[i].name.size() + 2;
      t.sections.emplace_back(tags[i].name,
                              std::string(generation.substr(body_start, tags[j].offset - body_start)));
      break;
    }
  }
  if (const auto* body = t.section("CONCLUSION")) {
    auto c = parse_conclusion(*body);
    t.conclusion_rows = std::move(c.rows);
    t.row_errors = std::move(c.errors);
  }
  return t;
}

inline std::vector<ConclusionRow> parse_conclusion(const QuantityTrace& trace) {
  return trace.conclusion_rows;
}

// Well-formed iff the known tags, read in order, are exactly the six
// open/close pairs in canonical order and the conclusion rows all parse.
inline FormatVerdict check_quantity_format(std::string_view generation) {
  FormatVerdict v;
  const auto tags = scan_section_tags(generation);
  for (auto name : kTraceSections) {
    int opens = 0;
    int closes = 0;
    for (const auto& t : tags) {
      if (t.name != name) continue;
      (t.closing ? closes : opens)++;
    }
    const std::string n(name);
    if (opens == 0 && closes == 0) {
      v.add("missing-tag", "missing tag " + n);
    } else if (opens > 1 || closes > 1) {
      v.add("duplicate-tag", "duplicate tag " + n);
    } else if (opens == 1 && closes == 0) {
      v.add("unclosed-tag", "unclosed tag " + n);
    } else if (opens == 0) {
      v.add("unopened-tag", "closing tag without opening " + n);
    }
  }
  if (v.well_formed && tags != canonical_tag_sequence()) {
    v.add("tag-order", "sections out of canonical order or improperly nested");
  }
  if (v.well_formed) {
    const auto trace = parse_quantity_trace(generation);
    for (const auto& e : trace.row_errors) {
      v.add("conclusion", "unparseable conclusion row " + std::to_string(e.line) + ": " + e.message);
    }
  }
  return v;
}

// --- sentences ------------------------------------------------------------

namespace detail {

inline constexpr std::array<std::u32string_view, 23> kAbbreviations = {
    U"fig", U"figs",   U"al", U"e.g", U"i.e", U"eq",  U"eqs", U"ref",  U"refs", U"vs",  U"cf", U"approx",
    U"ca",  U"no",     U"nos", U"tab", U"sec", U"wt", U"resp", U"ed", U"dr",   U"prof", U"mr",
};

inline bool is_closer(char32_t c) {
  return c == U')' || c == U']' || c == U'"' || c == U'\'' || c == 0x201D || c == 0x2019;
}

inline bool abbreviation_before(std::u32string_view t, std::size_t dot) {
  std::size_t s = dot;
  while (s > 0 && (utf8::is_letter(t[s - 1]) || t[s - 1] == U'.')) --s;
  if (s == dot) return false;
  const std::u32string word = utf8::ascii_lower(t.substr(s, dot - s));
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

}  // namespace detail

// Sentence spans (scalar offsets) of a text, trimmed of surrounding
// whitespace. A sentence ends at '.', '!' or '?' (plus closing quotes or
// brackets) followed by whitespace or the end of text, unless the period
// ends a known abbreviation. Single-letter words are not guarded: "5 K."
// ends far more sentences than an initial does.
inline std::vector<Span> segment_sentences(std::u32string_view t) {
  std::vector<Span> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t s, std::size_t e) {
    while (s < e && utf8::is_space(t[s])) ++s;
    while (e > s && utf8::is_space(t[e - 1])) --e;
    if (s < e) out.push_back({s, e});
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    const char32_t c = t[i];
    if (c != U'.' && c != U'!' && c != U'?') continue;
    std::size_t e = i + 1;
    while (e < t.size() && detail::is_closer(t[e])) ++e;
    if (e < t.size() && !utf8::is_space(t[e])) continue;
    if (c == U'.' && detail::abbreviation_before(t, i)) continue;
    emit(start, e);
    start = e;
    i = e - 1;
  }
  emit(start, t.size());
  return out;
}

inline std::vector<Span> segment_sentences(std::string_view text) {
  return segment_sentences(std::u32string_view(utf8::decode(text)));
}

// Finds `needle` in `hay` after collapsing whitespace runs on both sides.
// Only occurrences starting inside `within` count. Offsets are in `hay`.
inline std::optional<Span> find_normalized(std::u32string_view hay, std::string_view needle,
                                           std::optional<Span> within = std::nullopt) {
  const auto n = utf8::normalize_whitespace(utf8::decode(needle)).text;
  if (n.empty()) return std::nullopt;
  const auto h = utf8::normalize_whitespace(hay);
  for (std::size_t pos = h.text.find(n); pos != std::u32string::npos; pos = h.text.find(n, pos + 1)) {
    Span s{h.origin[pos], h.origin[pos + n.size() - 1] + 1};
    if (!within || within->contains(s)) return s;
  }
  return std::nullopt;
}

struct SentenceQuantities {
  Span sentence;
  std::string text;
  std::vector<std::string> quantities;
};

struct SentenceLocation {
  std::vector<SentenceQuantities> sentences;  // ordered by position
  std::vector<std::string> not_found;
};

inline SentenceLocation locate_quantity_sentences(const Document& doc,
                                                  const std::vector<std::string>& quantities) {
  SentenceLocation out;
  if (quantities.empty()) return out;
  const std::u32string t = utf8::decode(doc.text);
  const auto sentences = segment_sentences(std::u32string_view(t));
  std::vector<std::vector<std::string>> hits(sentences.size());
  for (const auto& q : quantities) {
    auto where = find_normalized(t, q);
    if (!where) {
      out.not_found.push_back(q);
      continue;
    }
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      if (sentences[i].start <= where->start && where->start < sentences[i].end) {
        hits[i].push_back(q);
        break;
      }
    }
  }
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (hits[i].empty()) continue;
    out.sentences.push_back({sentences[i],
                             utf8::encode(std::u32string_view(t).substr(
                                 sentences[i].start, sentences[i].length())),
                             std::move(hits[i])});
  }
  return out;
}

// --- relation narratives ---------------------------------------------------

struct Cue {
  std::string phrase;  // lowercase
  AnnotationClass role;
};

class CueLexicon {
 public:
  static const CueLexicon& builtin() {
    static const CueLexicon lex = [] {
      CueLexicon c;
      c.cues_ = {
          {"surface form", AnnotationClass::Quantity},
          {"unit", AnnotationClass::Unit},
          {"modifier", AnnotationClass::Modifier},
          {"entity", AnnotationClass::MeasuredEntity},
          {"property", AnnotationClass::MeasuredProperty},
          {"properties", AnnotationClass::MeasuredProperty},
          {"qualifier", AnnotationClass::Qualifier},
      };
      return c;
    }();
    return lex;
  }

  // Lines: phrase<TAB>role, role one of the six span class names.
  static CueLexicon parse(std::string_view text) {
    CueLexicon c;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (utf8::trim(line).empty() || line[0] == '#') continue;
      auto cols = utf8::split(line, '\t');
      if (cols.size() != 2) throw ParseError("cue entry needs phrase and role", line_no);
      auto role = class_from_string(utf8::trim(cols[1]));
      if (!role || is_relation(*role)) {
        throw ParseError("unknown cue role '" + cols[1] + "'", line_no, 2);
      }
      c.cues_.push_back({utf8::ascii_lower(utf8::normalize_whitespace(cols[0])), *role});
    }
    if (c.cues_.empty()) throw ParseError("cue lexicon is empty");
    return c;
  }

  const std::vector<Cue>& cues() const { return cues_; }

  // Role of the cue occurring last in `gap`; on ties the longer phrase wins.
  std::optional<AnnotationClass> role_for(std::string_view gap) const {
    const std::u32string g = utf8::ascii_lower(utf8::decode(utf8::normalize_whitespace(gap)));
    std::optional<AnnotationClass> best;
    std::size_t best_end = 0;
    std::size_t best_len = 0;
    for (const auto& cue : cues_) {
      const std::u32string p = utf8::decode(cue.phrase);
      for (std::size_t pos = g.find(p); pos != std::u32string::npos; pos = g.find(p, pos + 1)) {
        if (pos > 0 && utf8::is_alnum(g[pos - 1])) continue;
        const std::size_t end = pos + p.size();
        if (!best || end > best_end || (end == best_end && p.size() > best_len)) {
          best = cue.role;
          best_end = end;
          best_len = p.size();
        }
      }
    }
    return best;
  }

 private:
  std::vector<Cue> cues_;
};

struct Statement {
  AnnotationClass role;
  std::string surface;  // whitespace-collapsed bracket content
};

struct RelationNarrative {
  std::vector<std::string> evidence_sentences;
  std::vector<std::optional<Span>> evidence_spans;  // grounding in the document
  std::vector<Statement> statements;
  std::vector<MeasurementGroup> groups;

  bool all_grounded() const {
    return std::all_of(evidence_spans.begin(), evidence_spans.end(),
                       [](const auto& s) { return s.has_value(); });
  }
};

struct NarrativeParse {
  RelationNarrative narrative;
  FormatVerdict verdict;
};

namespace detail {

inline std::optional<std::string> tagged_block(std::string_view text, std::string_view name,
                                               std::size_t* open_at = nullptr,
                                               std::size_t* close_end = nullptr) {
  const std::string open = "<" + std::string(name) + ">";
  const std::string close = "</" + std::string(name) + ">";
  const std::size_t a = text.find(open);
  if (a == std::string_view::npos) return std::nullopt;
  const std::size_t b = text.find(close, a + open.size());
  if (b == std::string_view::npos) return std::nullopt;
  if (open_at) *open_at = a;
  if (close_end) *close_end = b + close.size();
  return std::string(text.substr(a + open.size(), b - a - open.size()));
}

inline std::string strip_list_marker(std::string line) {
  line = utf8::trim(line);
  if (line.size() >= 2 && (line[0] == '-' || line[0] == '*') && line[1] == ' ') {
    return utf8::trim(line.substr(2));
  }
  std::size_t k = 0;
  while (k < line.size() && line[k] >= '0' && line[k] <= '9') ++k;
  if (k > 0 && k + 1 < line.size() && (line[k] == '.' || line[k] == ')') && line[k + 1] == ' ') {
    return utf8::trim(line.substr(k + 2));
  }
  return line;
}

}  // namespace detail

inline NarrativeParse parse_relation_narrative(std::string_view generation, const Document& doc,
                                               const CueLexicon& cues = CueLexicon::builtin()) {
  NarrativeParse out;
  auto& n = out.narrative;
  auto& v = out.verdict;
  const std::u32string text = utf8::decode(doc.text);

  // Tags are optional, but a tag present must be paired and unique.
  for (const std::string_view name : {"EVIDENCE", "ANALYSIS"}) {
    const std::string open = "<" + std::string(name) + ">";
    const std::string close = "</" + std::string(name) + ">";
    auto count = [&](const std::string& t) {
      std::size_t k = 0;
      for (auto p = generation.find(t); p != std::string_view::npos; p = generation.find(t, p + t.size())) ++k;
      return k;
    };
    const std::size_t opens = count(open), closes = count(close);
    if (opens > 1 || closes > 1) {
      v.add("duplicate-tag", "duplicate tag " + std::string(name));
    } else if (opens != closes) {
      v.add("unpaired-tag", (opens ? "unclosed tag " : "unopened tag ") + std::string(name));
    } else if (opens && generation.find(close) < generation.find(open)) {
      v.add("tag-order", "tag " + std::string(name) + " closed before it opens");
    }
  }

  // Stage 1: evidence sentences.
  std::size_t ev_open = 0;
  std::size_t ev_end = 0;
  const auto evidence = detail::tagged_block(generation, "EVIDENCE", &ev_open, &ev_end);
  if (evidence) {
    std::istringstream in(*evidence);
    std::string line;
    while (std::getline(in, line)) {
      std::string s = detail::strip_list_marker(line);
      if (s.empty()) continue;
      auto span = find_normalized(text, s);
      if (!span) v.add("ungrounded-sentence", "ungrounded sentence: " + s);
      n.evidence_sentences.push_back(std::move(s));
      n.evidence_spans.push_back(span);
    }
  }

  // Stage 2: cue/bracket statements.
  std::string analysis;
  if (auto a = detail::tagged_block(generation, "ANALYSIS")) {
    analysis = *a;
  } else if (evidence) {
    analysis = std::string(generation.substr(0, ev_open)) + "\n" +
               std::string(generation.substr(ev_end));
  } else {
    analysis = std::string(generation);
  }
  std::size_t gap_start = 0;
  for (std::size_t p = analysis.find('['); p != std::string::npos;) {
    const std::size_t close = analysis.find(']', p + 1);
    const std::size_t reopen = analysis.find('[', p + 1);
    if (close == std::string::npos || (reopen != std::string::npos && reopen < close)) {
      v.add("unbalanced-bracket", "unmatched '[' at offset " + std::to_string(p));
      p = reopen;
      continue;
    }
    const std::string surface =
        utf8::normalize_whitespace(std::string_view(analysis).substr(p + 1, close - p - 1));
    const auto role = cues.role_for(std::string_view(analysis).substr(gap_start, p - gap_start));
    if (!role) {
      v.add("unknown-cue", "bracket with no recognized cue: [" + surface + "]");
    } else if (surface.empty()) {
      v.add("empty-bracket", "empty bracket after cue " + std::string(to_string(*role)));
    } else {
      n.statements.push_back({*role, surface});
    }
    gap_start = close + 1;
    p = analysis.find('[', close + 1);
  }
  if (n.statements.empty()) v.add("no-analysis", "no analysis section");

  // Group assembly: a Quantity cue opens a group, other cues attach to it.
  std::vector<Span> evidence_region;
  for (const auto& s : n.evidence_spans) {
    if (s) evidence_region.push_back(*s);
  }
  auto ground = [&](const std::string& surface) -> std::optional<Span> {
    for (const auto& region : evidence_region) {
      if (auto s = find_normalized(text, surface, region)) return s;
    }
    return find_normalized(text, surface);
  };
  auto make = [&](AnnotationClass cls, const std::string& surface, int set,
                  const std::string& id) {
    Annotation a;
    a.doc_id = doc.doc_id;
    a.annot_set = set;
    a.cls = cls;
    a.annot_id = id;
    a.span = ground(surface);
    a.surface = a.span ? utf8::encode(std::u32string_view(text).substr(a.span->start,
                                                                       a.span->length()))
                       : surface;
    return a;
  };
  MeasurementGroup* g = nullptr;
  for (const auto& st : n.statements) {
    if (st.role == AnnotationClass::Quantity) {
      const int set = static_cast<int>(n.groups.size()) + 1;
      n.groups.emplace_back();
      g = &n.groups.back();
      g->annot_set = set;
      g->quantity = make(AnnotationClass::Quantity, st.surface, set, "Q" + std::to_string(set));
      if (!evidence_region.empty() && g->quantity.span &&
          std::none_of(evidence_region.begin(), evidence_region.end(),
                       [&](const Span& r) { return r.contains(*g->quantity.span); })) {
        v.add("quantity-outside-evidence",
              "quantity outside the evidence sentences: " + st.surface);
      }
      continue;
    }
    if (!g) {
      v.add("cue-before-quantity",
            std::string(to_string(st.role)) + " cue before any quantity: [" + st.surface + "]");
      continue;
    }
    const std::string set_str = std::to_string(g->annot_set);
    switch (st.role) {
      case AnnotationClass::Unit:
        g->quantity.attributes[std::string(kUnitKey)] = st.surface;
        break;
      case AnnotationClass::Modifier: {
        auto mods = g->quantity.modifiers();
        std::string err;
        for (auto& m : detail::split_modifiers(st.surface, &err)) {
          if (std::find(mods.begin(), mods.end(), m) == mods.end()) mods.push_back(m);
        }
        if (!err.empty()) v.add("bad-modifier", err);
        g->quantity.attributes[std::string(kModifiersKey)] = mods;
        break;
      }
      case AnnotationClass::MeasuredEntity:
        if (g->measured_entity) {
          v.add("duplicate-role", "second entity in group " + set_str);
        } else {
          g->measured_entity = make(st.role, st.surface, g->annot_set, "ME" + set_str);
        }
        break;
      case AnnotationClass::MeasuredProperty:
        if (g->measured_property) {
          v.add("duplicate-role", "second property in group " + set_str);
        } else {
          g->measured_property = make(st.role, st.surface, g->annot_set, "MP" + set_str);
        }
        break;
      case AnnotationClass::Qualifier:
        g->qualifiers.push_back(make(st.role, st.surface, g->annot_set,
                                     "QL" + set_str + "." + std::to_string(g->qualifiers.size() + 1)));
        break;
      default:
        break;
    }
  }
  for (auto& grp : n.groups) {
    auto rel = [&](AnnotationClass cls, const Annotation& src, const Annotation& dst) {
      Annotation r;
      r.doc_id = doc.doc_id;
      r.annot_set = grp.annot_set;
      r.cls = cls;
      r.annot_id = "R" + std::to_string(grp.annot_set) + "." + std::to_string(grp.relations.size() + 1);
      r.source_id = src.annot_id;
      r.target_id = dst.annot_id;
      grp.relations.push_back(std::move(r));
    };
    if (grp.measured_entity) {
      rel(AnnotationClass::HasQuantity, *grp.measured_entity, grp.quantity);
      if (grp.measured_property) rel(AnnotationClass::HasProperty, *grp.measured_entity, *grp.measured_property);
    } else if (grp.measured_property) {
      rel(AnnotationClass::HasQuantity, *grp.measured_property, grp.quantity);
    }
    for (const auto& q : grp.qualifiers) rel(AnnotationClass::Qualifies, q, grp.quantity);
  }
  return out;
}

// Every annotation of the predicted groups, relations included.
inline std::vector<Annotation> flatten_groups(const std::vector<MeasurementGroup>& groups) {
  std::vector<Annotation> out;
  for (const auto& g : groups) {
    for (const auto* a : g.members()) out.push_back(*a);
  }
  return out;
}

}  // namespace measqc
