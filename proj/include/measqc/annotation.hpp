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

// Documents, span annotations, measurement groups and the MeasEval TSV
// layout:
//
//   docId  annotSet  annotType  startOffset  endOffset  annotId  text  other
//
// `other` is a JSON object of string or string-list attributes ("unit",
// "mods", ...). Relation rows (HasQuantity, HasProperty, Qualifies) leave
// the offset and text columns empty and carry their endpoints as
// {"source": <annotId>, "target": <annotId>} inside `other`.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include <json.hpp>

#include "measqc/error.hpp"
#include "measqc/utf8.hpp"

namespace measqc {

enum class AnnotationClass {
  Quantity,
  Unit,
  Modifier,
  MeasuredEntity,
  MeasuredProperty,
  Qualifier,
  HasQuantity,
  HasProperty,
  Qualifies,
};

inline constexpr std::array<AnnotationClass, 9> kAllClasses = {
    AnnotationClass::Quantity,         AnnotationClass::Unit,
    AnnotationClass::Modifier,         AnnotationClass::MeasuredEntity,
    AnnotationClass::MeasuredProperty, AnnotationClass::Qualifier,
    AnnotationClass::HasQuantity,      AnnotationClass::HasProperty,
    AnnotationClass::Qualifies,
};

inline constexpr std::array<AnnotationClass, 6> kSpanClasses = {
    AnnotationClass::Quantity,         AnnotationClass::Unit,
    AnnotationClass::Modifier,         AnnotationClass::MeasuredEntity,
    AnnotationClass::MeasuredProperty, AnnotationClass::Qualifier,
};

inline constexpr std::array<AnnotationClass, 3> kRelationClasses = {
    AnnotationClass::HasQuantity,
    AnnotationClass::HasProperty,
    AnnotationClass::Qualifies,
};

inline bool is_relation(AnnotationClass c) {
  return c == AnnotationClass::HasQuantity || c == AnnotationClass::HasProperty ||
         c == AnnotationClass::Qualifies;
}

inline std::string_view to_string(AnnotationClass c) {
  switch (c) {
    case AnnotationClass::Quantity: return "Quantity";
    case AnnotationClass::Unit: return "Unit";
    case AnnotationClass::Modifier: return "Modifier";
    case AnnotationClass::MeasuredEntity: return "MeasuredEntity";
    case AnnotationClass::MeasuredProperty: return "MeasuredProperty";
    case AnnotationClass::Qualifier: return "Qualifier";
    case AnnotationClass::HasQuantity: return "HasQuantity";
    case AnnotationClass::HasProperty: return "HasProperty";
    case AnnotationClass::Qualifies: return "Qualifies";
  }
  return "?";
}

inline std::optional<AnnotationClass> class_from_string(std::string_view s) {
  for (auto c : kAllClasses) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

// Modifier values documented by the MeasEval guidelines. The vocabulary is
// open: unknown values are kept verbatim.
inline constexpr std::array<std::string_view, 7> kKnownModifiers = {
    "IsRange", "IsApproximate", "IsCount", "IsList",
    "IsMean",  "IsMedian",      "HasTolerance",
};

// Half-open character range in Unicode scalar values.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t length() const { return end - start; }
  bool valid() const { return start < end; }
  bool overlaps(const Span& o) const { return start < o.end && o.start < end; }
  bool contains(const Span& o) const { return start <= o.start && o.end <= end; }

  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

struct Document {
  std::string doc_id;
  std::string text;

  friend bool operator==(const Document&, const Document&) = default;
};

using AttrValue = std::variant<std::string, std::vector<std::string>>;
using Attributes = std::map<std::string, AttrValue>;

inline constexpr std::string_view kUnitKey = "unit";
inline constexpr std::string_view kModifiersKey = "mods";

struct Annotation {
  std::string doc_id;
  int annot_set = 0;
  AnnotationClass cls = AnnotationClass::Quantity;
  std::optional<Span> span;  // span classes only; predictions may be ungrounded
  std::string annot_id;
  std::string surface;
  Attributes attributes;
  std::string source_id;  // relation classes only
  std::string target_id;

  std::optional<std::string> unit() const {
    auto it = attributes.find(std::string(kUnitKey));
    if (it == attributes.end()) return std::nullopt;
    if (const auto* s = std::get_if<std::string>(&it->second)) return *s;
    const auto& v = std::get<std::vector<std::string>>(it->second);
    if (v.empty()) return std::nullopt;
    return v.front();
  }

  std::vector<std::string> modifiers() const {
    auto it = attributes.find(std::string(kModifiersKey));
    if (it == attributes.end()) return {};
    if (const auto* s = std::get_if<std::string>(&it->second)) return {*s};
    return std::get<std::vector<std::string>>(it->second);
  }

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

// Canonical row order: (doc_id, annot_set, annot_id).
inline bool canonical_less(const Annotation& a, const Annotation& b) {
  return std::tie(a.doc_id, a.annot_set, a.annot_id) <
         std::tie(b.doc_id, b.annot_set, b.annot_id);
}

struct Corpus {
  // Optional document texts; when present, offsets are checked against them.
  std::map<std::string, Document> documents;
  // Annotations per document, kept in canonical order.
  std::map<std::string, std::vector<Annotation>> annotations;

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [_, v] : annotations) n += v.size();
    return n;
  }

  const std::vector<Annotation>& of(const std::string& doc_id) const {
    static const std::vector<Annotation> kEmpty;
    auto it = annotations.find(doc_id);
    return it == annotations.end() ? kEmpty : it->second;
  }

  void add(Annotation a) {
    auto& v = annotations[a.doc_id];
    auto pos = std::upper_bound(v.begin(), v.end(), a, canonical_less);
    v.insert(pos, std::move(a));
  }
};

struct ValidationIssue {
  std::string doc_id;
  std::string annot_id;
  std::string message;
};

// Every invariant violation in the corpus, in canonical order.
inline std::vector<ValidationIssue> validation_issues(const Corpus& corpus) {
  std::vector<ValidationIssue> issues;
  for (const auto& [doc_id, anns] : corpus.annotations) {
    const Document* doc = nullptr;
    std::u32string text;
    if (auto it = corpus.documents.find(doc_id); it != corpus.documents.end()) {
      doc = &it->second;
      text = utf8::decode(doc->text);
    }
    std::set<std::string> ids;
    for (const auto& a : anns) {
      if (a.doc_id != doc_id) {
        issues.push_back({doc_id, a.annot_id, "annotation filed under wrong document"});
      }
      if (a.annot_id.empty()) {
        issues.push_back({doc_id, a.annot_id, "empty annotId"});
      } else if (!ids.insert(a.annot_id).second) {
        issues.push_back({doc_id, a.annot_id, "duplicate annotId"});
      }
    }
    for (const auto& a : anns) {
      if (is_relation(a.cls)) {
        if (a.span) issues.push_back({doc_id, a.annot_id, "relation carries a span"});
        for (const auto* end : {&a.source_id, &a.target_id}) {
          if (end->empty()) {
            issues.push_back({doc_id, a.annot_id, "relation endpoint missing"});
          } else if (!ids.count(*end)) {
            issues.push_back({doc_id, a.annot_id, "dangling relation endpoint " + *end});
          }
        }
        continue;
      }
      if (!a.source_id.empty() || !a.target_id.empty()) {
        issues.push_back({doc_id, a.annot_id, "span annotation carries endpoints"});
      }
      if (!a.span || !a.span->valid()) {
        issues.push_back({doc_id, a.annot_id, "span class without a valid span"});
        continue;
      }
      if (a.surface.find_first_of("\t\n\r") != std::string::npos) {
        issues.push_back({doc_id, a.annot_id, "surface contains tab or newline"});
      }
      if (doc) {
        if (a.span->end > text.size()) {
          issues.push_back({doc_id, a.annot_id, "offset outside document"});
        } else if (utf8::encode(std::u32string_view(text).substr(
                       a.span->start, a.span->length())) != a.surface) {
          issues.push_back({doc_id, a.annot_id, "surface differs from document text"});
        }
      }
    }
  }
  return issues;
}

inline void validate(const Corpus& corpus) {
  auto issues = validation_issues(corpus);
  if (issues.empty()) return;
  std::vector<std::string> ids;
  for (const auto& i : issues) ids.push_back(i.doc_id + "/" + i.annot_id);
  throw ValidationError("invalid corpus: " + issues.front().message, ids);
}

namespace detail {

inline std::size_t parse_index(const std::string& field, std::size_t line,
                               std::size_t column, const char* what) {
  if (field.empty() ||
      !std::all_of(field.begin(), field.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError(std::string("expected non-negative integer for ") + what +
                         ", got '" + field + "'",
                     line, column);
  }
  try {
    return static_cast<std::size_t>(std::stoull(field));
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + " out of range", line, column);
  }
}

inline Attributes parse_attributes(const std::string& field, std::size_t line,
                                   std::size_t column) {
  Attributes attrs;
  if (utf8::trim(field).empty()) return attrs;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(field);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("bad attribute JSON: ") + e.what(), line, column);
  }
  if (!j.is_object()) throw ParseError("attribute column is not a JSON object", line, column);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_string()) {
      attrs[it.key()] = it->get<std::string>();
    } else if (it->is_array()) {
      std::vector<std::string> vals;
      for (const auto& v : *it) {
        if (!v.is_string()) {
          throw ParseError("attribute '" + it.key() + "' has a non-string element", line,
                           column);
        }
        vals.push_back(v.get<std::string>());
      }
      attrs[it.key()] = std::move(vals);
    } else {
      throw ParseError("attribute '" + it.key() + "' must be a string or string list",
                       line, column);
    }
  }
  return attrs;
}

inline std::string serialize_attributes(const Attributes& attrs) {
  if (attrs.empty()) return {};
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : attrs) {
    if (const auto* s = std::get_if<std::string>(&v)) {
      j[k] = *s;
    } else {
      j[k] = std::get<std::vector<std::string>>(v);
    }
  }
  return j.dump(-1, ' ', false);
}

}  // namespace detail

inline constexpr std::array<std::string_view, 8> kTsvColumns = {
    "docId", "annotSet", "annotType", "startOffset", "endOffset", "annotId", "text", "other",
};

// Reads a MeasEval TSV and validates the result. When `documents` is given,
// offsets and surfaces are also checked against the texts, which are
// attached to the corpus.
inline Corpus load_measeval_tsv(std::istream& in,
                                const std::map<std::string, Document>* documents = nullptr) {
  Corpus corpus;
  if (documents) corpus.documents = *documents;
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (!header_seen) {
      if (raw.size() >= 3 && raw.compare(0, 3, "\xEF\xBB\xBF") == 0) raw.erase(0, 3);
      auto cols = utf8::split(raw, '\t');
      if (cols.size() < 7 || cols.size() > 8) {
        throw ParseError("header must have the 8 MeasEval columns", line_no, 1);
      }
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] != kTsvColumns[i]) {
          throw ParseError("unexpected header column '" + cols[i] + "', expected '" +
                               std::string(kTsvColumns[i]) + "'",
                           line_no, i + 1);
        }
      }
      header_seen = true;
      continue;
    }
    if (utf8::trim(raw).empty()) continue;
    auto cols = utf8::split(raw, '\t');
    if (cols.size() == 7) cols.emplace_back();
    if (cols.size() != 8) {
      throw ParseError("expected 8 tab-separated columns, found " +
                           std::to_string(cols.size()),
                       line_no, std::min<std::size_t>(cols.size(), 9));
    }
    Annotation a;
    a.doc_id = cols[0];
    if (a.doc_id.empty()) throw ParseError("empty docId", line_no, 1);
    a.annot_set = static_cast<int>(detail::parse_index(cols[1], line_no, 2, "annotSet"));
    auto cls = class_from_string(cols[2]);
    if (!cls) throw ParseError("unknown annotType '" + cols[2] + "'", line_no, 3);
    a.cls = *cls;
    a.annot_id = cols[5];
    if (a.annot_id.empty()) throw ParseError("empty annotId", line_no, 6);
    a.attributes = detail::parse_attributes(cols[7], line_no, 8);
    if (is_relation(a.cls)) {
      if (!cols[3].empty() || !cols[4].empty() || !cols[6].empty()) {
        throw ParseError("relation rows must leave offsets and text empty", line_no, 4);
      }
      for (auto [key, field] : {std::pair{"source", &a.source_id},
                                std::pair{"target", &a.target_id}}) {
        auto it = a.attributes.find(key);
        if (it == a.attributes.end() || !std::holds_alternative<std::string>(it->second)) {
          throw ParseError(std::string("relation row needs a string '") + key +
                               "' in the other column",
                           line_no, 8);
        }
        *field = std::get<std::string>(it->second);
        a.attributes.erase(it);
      }
    } else {
      Span s{detail::parse_index(cols[3], line_no, 4, "startOffset"),
             detail::parse_index(cols[4], line_no, 5, "endOffset")};
      if (!s.valid()) throw ParseError("startOffset must be < endOffset", line_no, 4);
      a.span = s;
      a.surface = cols[6];
    }
    corpus.add(std::move(a));
  }
  auto issues = validation_issues(corpus);
  if (!issues.empty()) {
    std::vector<std::string> ids;
    for (const auto& i : issues) ids.push_back(i.doc_id + "/" + i.annot_id);
    throw ValidationError("invalid annotation: " + issues.front().message, ids);
  }
  return corpus;
}

inline Corpus load_measeval_tsv(const std::string& text,
                                const std::map<std::string, Document>* documents = nullptr) {
  std::istringstream in(text);
  return load_measeval_tsv(in, documents);
}

// Writes the corpus in canonical row order. Refuses corpora that fail
// validation; the error lists the offending annotation ids.
inline void write_measeval_tsv(const Corpus& corpus, std::ostream& out) {
  validate(corpus);
  for (std::size_t i = 0; i < kTsvColumns.size(); ++i) {
    out << (i ? "\t" : "") << kTsvColumns[i];
  }
  out << '\n';
  std::vector<const Annotation*> rows;
  for (const auto& [_, anns] : corpus.annotations) {
    for (const auto& a : anns) rows.push_back(&a);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Annotation* a, const Annotation* b) { return canonical_less(*a, *b); });
  for (const Annotation* a : rows) {
    out << a->doc_id << '\t' << a->annot_set << '\t' << to_string(a->cls) << '\t';
    Attributes attrs = a->attributes;
    if (is_relation(a->cls)) {
      attrs["source"] = a->source_id;
      attrs["target"] = a->target_id;
      out << "\t\t" << a->annot_id << "\t\t";
    } else {
      out << a->span->start << '\t' << a->span->end << '\t' << a->annot_id << '\t'
          << a->surface << '\t';
    }
    out << detail::serialize_attributes(attrs) << '\n';
  }
}

inline std::string write_measeval_tsv(const Corpus& corpus) {
  std::ostringstream out;
  write_measeval_tsv(corpus, out);
  return out.str();
}

// Two-column (doc_id, text) TSV; an optional "docId<TAB>text" header is skipped.
inline std::map<std::string, Document> load_documents_tsv(std::istream& in) {
  std::map<std::string, Document> docs;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (utf8::trim(raw).empty()) continue;
    auto tab = raw.find('\t');
    if (tab == std::string::npos) throw ParseError("expected doc_id<TAB>text", line_no, 1);
    std::string id = raw.substr(0, tab);
    std::string text = raw.substr(tab + 1);
    if (line_no == 1 && (id == "docId" || id == "doc_id")) continue;
    if (text.empty()) throw ParseError("empty document text", line_no, 2);
    if (!docs.emplace(id, Document{id, text}).second) {
      throw ParseError("duplicate document id '" + id + "'", line_no, 1);
    }
  }
  return docs;
}

// One UTF-8 file per document; the doc_id is the file stem.
inline std::map<std::string, Document> load_documents_dir(const std::filesystem::path& dir) {
  std::map<std::string, Document> docs;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream f(entry.path(), std::ios::binary);
    if (!f) throw Error("cannot read " + entry.path().string());
    std::ostringstream ss;
    ss << f.rdbuf();
    std::string id = entry.path().stem().string();
    std::string text = ss.str();
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    if (text.empty()) throw ValidationError("empty document", {id});
    docs.emplace(id, Document{id, std::move(text)});
  }
  return docs;
}

struct MeasurementGroup {
  int annot_set = 0;
  Annotation quantity;
  std::optional<Annotation> measured_entity;
  std::optional<Annotation> measured_property;
  std::vector<Annotation> qualifiers;
  std::vector<Annotation> relations;
  std::vector<Annotation> attribute_spans;  // Unit / Modifier span rows, if any

  std::vector<const Annotation*> members() const {
    std::vector<const Annotation*> out{&quantity};
    if (measured_entity) out.push_back(&*measured_entity);
    if (measured_property) out.push_back(&*measured_property);
    for (const auto& q : qualifiers) out.push_back(&q);
    for (const auto& r : relations) out.push_back(&r);
    for (const auto& s : attribute_spans) out.push_back(&s);
    return out;
  }
};

struct Grouping {
  std::vector<MeasurementGroup> groups;  // ordered by annot_set
  std::vector<Annotation> orphans;       // annotations whose set has no Quantity
};

// Partitions one document's annotations by annot_set.
inline Grouping assemble_groups(const std::vector<Annotation>& annotations) {
  std::map<int, std::vector<const Annotation*>> by_set;
  for (const auto& a : annotations) by_set[a.annot_set].push_back(&a);

  Grouping out;
  for (const auto& [set, members] : by_set) {
    std::vector<const Annotation*> quantities;
    for (const auto* a : members) {
      if (a->cls == AnnotationClass::Quantity) quantities.push_back(a);
    }
    if (quantities.size() > 1) {
      throw ValidationError("two Quantity annotations share annotSet " + std::to_string(set),
                            {quantities[0]->annot_id, quantities[1]->annot_id});
    }
    if (quantities.empty()) {
      for (const auto* a : members) out.orphans.push_back(*a);
      continue;
    }
    MeasurementGroup g;
    g.annot_set = set;
    g.quantity = *quantities.front();
    for (const auto* a : members) {
      switch (a->cls) {
        case AnnotationClass::Quantity:
          break;
        case AnnotationClass::MeasuredEntity:
          if (g.measured_entity) {
            throw ValidationError("two MeasuredEntity annotations in one group",
                                  {g.measured_entity->annot_id, a->annot_id});
          }
          g.measured_entity = *a;
          break;
        case AnnotationClass::MeasuredProperty:
          if (g.measured_property) {
            throw ValidationError("two MeasuredProperty annotations in one group",
                                  {g.measured_property->annot_id, a->annot_id});
          }
          g.measured_property = *a;
          break;
        case AnnotationClass::Qualifier:
          g.qualifiers.push_back(*a);
          break;
        case AnnotationClass::Unit:
        case AnnotationClass::Modifier:
          g.attribute_spans.push_back(*a);
          break;
        default:
          g.relations.push_back(*a);
          break;
      }
    }
    out.groups.push_back(std::move(g));
  }
  return out;
}

}  // namespace measqc
