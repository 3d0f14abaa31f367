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

// Builds the two fine-tuning corpora. Augmented examples are trajectories
// generated from rule-based anchor quantities and kept when well formed.
// Traceback examples are trajectories generated from gold answers and kept
// only when their conclusion reproduces the gold rows exactly.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "measqc/annotation.hpp"
#include "measqc/default_data.hpp"
#include "measqc/error.hpp"
#include "measqc/output_parser.hpp"
#include "measqc/quantity_parser.hpp"
#include "measqc/reward.hpp"
#include "measqc/utf8.hpp"

namespace measqc {

// --- generation service ---------------------------------------------------

struct GenerationParams {
  double temperature = 0.0;
  int max_tokens = 2048;
  std::uint64_t seed = 0;
};

// Implementations must be callable from several threads at once.
class GenerationClient {
 public:
  virtual ~GenerationClient() = default;
  virtual std::string send(const std::string& prompt, const GenerationParams& params) const = 0;
};

// --- prompt templates -----------------------------------------------------

enum class TemplateId { Aug, Trace };

inline std::string_view to_string(TemplateId id) { return id == TemplateId::Aug ? "P_aug" : "P_trace"; }

inline TemplateId template_id_from_string(std::string_view s) {
  if (s == "P_aug" || s == "aug") return TemplateId::Aug;
  if (s == "P_trace" || s == "trace") return TemplateId::Trace;
  throw ConfigError("unknown template id '" + std::string(s) + "'");
}

// Placeholders are {NAME} with NAME drawn from A-Z and '_'.
inline std::vector<std::string> template_placeholders(std::string_view body) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] != '{') continue;
    std::size_t j = i + 1;
    while (j < body.size() && ((body[j] >= 'A' && body[j] <= 'Z') || body[j] == '_')) ++j;
    if (j > i + 1 && j < body.size() && body[j] == '}') {
      out.emplace_back(body.substr(i + 1, j - i - 1));
      i = j;
    }
  }
  return out;
}

struct PromptTemplate {
  TemplateId id = TemplateId::Aug;
  std::string body;

  // The answer placeholder for this template.
  std::string_view answer_placeholder() const { return id == TemplateId::Aug ? "ANCHORS" : "GOLD"; }

  // Throws ConfigError unless {TEXT} and the answer placeholder both occur.
  void check() const {
    const auto names = template_placeholders(body);
    for (std::string_view need : {std::string_view("TEXT"), answer_placeholder()}) {
      if (std::find(names.begin(), names.end(), need) == names.end()) {
        throw ConfigError("template " + std::string(to_string(id)) + " lacks placeholder {" +
                          std::string(need) + "}");
      }
    }
  }

  static PromptTemplate builtin(TemplateId id) {
    return {id, std::string(id == TemplateId::Aug ? data::kAugTemplate : data::kTraceTemplate)};
  }

  static PromptTemplate from_file(TemplateId id, const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot read template " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    PromptTemplate t{id, ss.str()};
    t.check();
    return t;
  }
};

// Substitutes every placeholder in one pass, so bound values are never
// rescanned. An unbound placeholder is a ConfigError.
inline std::string render_prompt(const PromptTemplate& tpl, const std::map<std::string, std::string>& bindings) {
  std::string out;
  const std::string_view body = tpl.body;
  std::size_t i = 0;
  while (i < body.size()) {
    if (body[i] == '{') {
      std::size_t j = i + 1;
      while (j < body.size() && ((body[j] >= 'A' && body[j] <= 'Z') || body[j] == '_')) ++j;
      if (j > i + 1 && j < body.size() && body[j] == '}') {
        const std::string name(body.substr(i + 1, j - i - 1));
        auto it = bindings.find(name);
        if (it == bindings.end()) {
          throw ConfigError("unbound placeholder {" + name + "} in template " + std::string(to_string(tpl.id)));
        }
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out += body[i++];
  }
  return out;
}

// --- answer rows ----------------------------------------------------------

inline std::string join_modifiers(const std::vector<std::string>& mods) {
  std::string out;
  for (std::size_t i = 0; i < mods.size(); ++i) {
    if (i) out += ',';
    out += mods[i];
  }
  return out;
}

inline ConclusionRow anchor_row(const ParsedQuantity& q) {
  ConclusionRow r;
  r.surface = utf8::normalize_whitespace(q.surface);
  if (!q.unit_surface.empty()) r.unit = q.unit_surface;
  r.modifiers = q.modifiers;
  return r;
}

// Gold Quantity annotations as answer rows, in the given order.
inline std::vector<ConclusionRow> gold_rows(const std::vector<Annotation>& gold) {
  std::vector<ConclusionRow> out;
  for (const auto& a : gold) {
    if (a.cls != AnnotationClass::Quantity) continue;
    ConclusionRow r;
    r.surface = utf8::normalize_whitespace(a.surface);
    r.unit = a.unit();
    r.modifiers = a.modifiers();
    out.push_back(std::move(r));
  }
  return out;
}

// One row per line: surface<TAB>unit<TAB>modifiers.
inline std::string format_anchor_rows(const std::vector<ConclusionRow>& rows) {
  return format_conclusion_rows(rows);
}

inline std::string render_aug_prompt(const PromptTemplate& tpl, const std::string& text,
                                     const std::vector<ParsedQuantity>& anchors) {
  if (anchors.empty()) throw ValidationError("empty anchors: nothing to render for " + std::string(to_string(tpl.id)), {});
  std::vector<ConclusionRow> rows;
  for (const auto& q : anchors) rows.push_back(anchor_row(q));
  return render_prompt(tpl, {{"TEXT", text}, {"ANCHORS", format_anchor_rows(rows)}});
}

inline std::string render_trace_prompt(const PromptTemplate& tpl, const std::string& text,
                                       const std::vector<Annotation>& gold) {
  return render_prompt(tpl, {{"TEXT", text}, {"GOLD", format_anchor_rows(gold_rows(gold))}});
}

// --- consistency test -----------------------------------------------------

// Comparison key: whitespace-normalized surface, trimmed unit (empty when
// absent) and the sorted, de-duplicated modifier set.
struct RowKey {
  std::string surface;
  std::string unit;
  std::vector<std::string> modifiers;

  auto tie() const { return std::tie(surface, unit, modifiers); }
  friend bool operator==(const RowKey& a, const RowKey& b) { return a.tie() == b.tie(); }
  friend bool operator<(const RowKey& a, const RowKey& b) { return a.tie() < b.tie(); }
};

inline RowKey row_key(const ConclusionRow& r) {
  RowKey k;
  k.surface = utf8::normalize_whitespace(r.surface);
  k.unit = r.unit ? utf8::trim(*r.unit) : std::string();
  for (const auto& m : r.modifiers) {
    std::string t = utf8::trim(m);
    if (!t.empty()) k.modifiers.push_back(t);
  }
  std::sort(k.modifiers.begin(), k.modifiers.end());
  k.modifiers.erase(std::unique(k.modifiers.begin(), k.modifiers.end()), k.modifiers.end());
  return k;
}

struct TraceVerdict {
  bool accepted = false;
  std::string reason;  // empty when accepted
};

namespace detail {

inline std::string describe(const RowKey& k) {
  return "'" + k.surface + "' | '" + k.unit + "' | {" + join_modifiers(k.modifiers) + "}";
}

// Names the first element that differs between two multisets.
inline std::string first_difference(std::vector<RowKey> gold, std::vector<RowKey> pred) {
  std::sort(gold.begin(), gold.end());
  std::sort(pred.begin(), pred.end());
  std::vector<RowKey> missing;
  std::vector<RowKey> extra;
  std::set_difference(gold.begin(), gold.end(), pred.begin(), pred.end(), std::back_inserter(missing));
  std::set_difference(pred.begin(), pred.end(), gold.begin(), gold.end(), std::back_inserter(extra));
  if (missing.empty() && extra.empty()) return {};
  if (missing.empty()) return "extra row " + describe(extra.front());
  if (extra.empty()) return "missing row " + describe(missing.front());
  const RowKey& g = missing.front();
  // Prefer a leftover that shares the surface, so unit and modifier edits
  // are named as such.
  const RowKey* p = &extra.front();
  for (const auto& e : extra) {
    if (e.surface == g.surface) {
      p = &e;
      break;
    }
  }
  if (p->surface != g.surface) return "surface mismatch: expected '" + g.surface + "', got '" + p->surface + "'";
  if (p->unit != g.unit) {
    return "unit mismatch for '" + g.surface + "': expected '" + g.unit + "', got '" + p->unit + "'";
  }
  return "modifier mismatch for '" + g.surface + "': expected {" + join_modifiers(g.modifiers) + "}, got {" +
         join_modifiers(p->modifiers) + "}";
}

}  // namespace detail

// Accepted iff the conclusion rows equal the gold rows as multisets of
// RowKey. A missing conclusion or an unparseable row is a rejection.
inline TraceVerdict validate_trace(std::string_view trajectory, const std::vector<ConclusionRow>& gold) {
  const auto trace = parse_quantity_trace(trajectory);
  if (!trace.section("CONCLUSION")) return {false, "no conclusion"};
  if (!trace.row_errors.empty()) {
    const auto& e = trace.row_errors.front();
    return {false, "unparseable conclusion row " + std::to_string(e.line) + ": " + e.message};
  }
  std::vector<RowKey> g;
  std::vector<RowKey> p;
  for (const auto& r : gold) g.push_back(row_key(r));
  for (const auto& r : trace.conclusion_rows) p.push_back(row_key(r));
  std::string diff = detail::first_difference(std::move(g), std::move(p));
  if (!diff.empty()) return {false, std::move(diff)};
  return {true, {}};
}

// --- examples -------------------------------------------------------------

enum class ExampleStatus { Accepted, Rejected, Skipped, Failed };

inline std::string_view to_string(ExampleStatus s) {
  switch (s) {
    case ExampleStatus::Accepted: return "accepted";
    case ExampleStatus::Rejected: return "rejected";
    case ExampleStatus::Skipped: return "skipped";
    case ExampleStatus::Failed: return "failed";
  }
  return "failed";
}

struct AugExample {
  std::string doc_id;
  std::string text;
  std::vector<ParsedQuantity> anchors;
  std::string trajectory;
  ExampleStatus status = ExampleStatus::Skipped;
  std::string reason;

  bool accepted() const { return status == ExampleStatus::Accepted; }
};

struct TraceExample {
  std::string doc_id;
  std::string text;
  std::vector<Annotation> gold;
  std::string trajectory;
  ExampleStatus status = ExampleStatus::Skipped;
  std::string reason;

  bool accepted() const { return status == ExampleStatus::Accepted; }
};

inline TraceVerdict validate_trace(const TraceExample& ex) { return validate_trace(ex.trajectory, gold_rows(ex.gold)); }

struct PipelineCounts {
  std::size_t inputs = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;

  double failure_rate() const {
    const std::size_t attempted = inputs - skipped;
    return attempted ? static_cast<double>(failed) / static_cast<double>(attempted) : 0.0;
  }
  bool conserved() const { return accepted + rejected + skipped + failed == inputs; }
};

template <typename Example>
PipelineCounts count_statuses(const std::vector<Example>& xs) {
  PipelineCounts c;
  c.inputs = xs.size();
  for (const auto& x : xs) {
    switch (x.status) {
      case ExampleStatus::Accepted: ++c.accepted; break;
      case ExampleStatus::Rejected: ++c.rejected; break;
      case ExampleStatus::Skipped: ++c.skipped; break;
      case ExampleStatus::Failed: ++c.failed; break;
    }
  }
  return c;
}

struct PipelineOptions {
  GenerationParams params;
  std::size_t max_in_flight = 4;
};

// Runs fn(0..n-1) on at most max_in_flight threads. Results are written by
// index, so output order never depends on completion order.
inline void run_bounded(std::size_t n, std::size_t max_in_flight, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(n, std::max<std::size_t>(1, max_in_flight));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

// One example per input document. Documents without anchors are skipped;
// client exceptions mark the example failed; the rest are accepted when the
// trajectory is well formed.
inline std::vector<AugExample> build_aug_candidates(const std::vector<Document>& corpus, const GenerationClient& client,
                                                    const PromptTemplate& tpl, const PipelineOptions& opts = {},
                                                    const QuantityParser& parser = default_parser()) {
  if (tpl.id != TemplateId::Aug) throw ConfigError("augmented candidates need the P_aug template");
  tpl.check();
  std::vector<AugExample> out(corpus.size());
  run_bounded(corpus.size(), opts.max_in_flight, [&](std::size_t i) {
    AugExample& ex = out[i];
    ex.doc_id = corpus[i].doc_id;
    ex.text = corpus[i].text;
    ex.anchors = parser.extract_quantities(ex.text);
    if (ex.anchors.empty()) {
      ex.status = ExampleStatus::Skipped;
      ex.reason = "no anchor quantities";
      return;
    }
    try {
      ex.trajectory = client.send(render_aug_prompt(tpl, ex.text, ex.anchors), opts.params);
    } catch (const std::exception& e) {
      ex.status = ExampleStatus::Failed;
      ex.reason = std::string("generation failed: ") + e.what();
      return;
    }
    const auto verdict = check_quantity_format(ex.trajectory);
    if (verdict.well_formed) {
      ex.status = ExampleStatus::Accepted;
    } else {
      ex.status = ExampleStatus::Rejected;
      ex.reason = "format: " + verdict.violations.front().message;
    }
  });
  return out;
}

struct TraceInput {
  Document doc;
  std::vector<Annotation> gold;
};

// One example per input document, kept only when validate_trace accepts.
inline std::vector<TraceExample> build_trace_examples(const std::vector<TraceInput>& corpus,
                                                      const GenerationClient& client, const PromptTemplate& tpl,
                                                      const PipelineOptions& opts = {}) {
  if (tpl.id != TemplateId::Trace) throw ConfigError("traceback examples need the P_trace template");
  tpl.check();
  std::vector<TraceExample> out(corpus.size());
  run_bounded(corpus.size(), opts.max_in_flight, [&](std::size_t i) {
    TraceExample& ex = out[i];
    ex.doc_id = corpus[i].doc.doc_id;
    ex.text = corpus[i].doc.text;
    ex.gold = corpus[i].gold;
    try {
      ex.trajectory = client.send(render_trace_prompt(tpl, ex.text, ex.gold), opts.params);
    } catch (const std::exception& e) {
      ex.status = ExampleStatus::Failed;
      ex.reason = std::string("generation failed: ") + e.what();
      return;
    }
    const auto v = validate_trace(ex);
    ex.status = v.accepted ? ExampleStatus::Accepted : ExampleStatus::Rejected;
    ex.reason = v.reason;
  });
  return out;
}

// --- deterministic mock ---------------------------------------------------

// Answers with a six-section trace whose conclusion copies the rows listed
// after the last answer heading of the prompt. Optional noise is drawn from
// a hash of (prompt, seed), so the output is a pure function of both.
class MockClient : public GenerationClient {
 public:
  struct Options {
    double fail_rate = 0.0;     // throw instead of answering
    double corrupt_rate = 0.0;  // damage the answer
  };

  MockClient() = default;
  explicit MockClient(Options o) : opts_(o) {}

  static constexpr std::string_view kAnchorHeading = "The reference answer from quantulum:";
  static constexpr std::string_view kGoldHeading = "The gold answers:";

  // 0 drops the closing conclusion tag; 1 drops the last conclusion row.
  static int corruption_kind(std::uint64_t h) { return static_cast<int>((h >> 40) & 1U); }

  std::string send(const std::string& prompt, const GenerationParams& params) const override {
    const std::uint64_t h = fnv1a64(prompt + '\x1f' + std::to_string(params.seed));
    if (unit_draw(h) < opts_.fail_rate) throw Error("mock service unavailable");
    std::vector<std::string> rows = answer_lines(prompt);
    const bool corrupt = unit_draw(h * 0x9E3779B97F4A7C15ULL + 1) < opts_.corrupt_rate;
    int kind = corrupt ? corruption_kind(h) : -1;
    if (kind == 1 && rows.empty()) kind = 0;
    if (kind == 1) rows.pop_back();
    std::string body;
    for (const auto& r : rows) body += r + "\n";
    std::string out = "<ARABIC-QUANTITY>\n";
    if (rows.empty()) {
      out += "No values written with digits.\n";
    } else {
      out += "Candidate values read from the text:\n";
      for (const auto& r : rows) out += "- " + r.substr(0, r.find('\t')) + "\n";
    }
    out += "</ARABIC-QUANTITY>\n";
    out += "<NUMERIC-QUANTITY>\nNone.\n</NUMERIC-QUANTITY>\n";
    out += "<TIME-QUANTITY>\nNone.\n</TIME-QUANTITY>\n";
    out += "<CHANGE-QUANTITY>\nNone.\n</CHANGE-QUANTITY>\n";
    out += "<FORMULA-QUANTITY>\nNone.\n</FORMULA-QUANTITY>\n";
    out += "<CONCLUSION>\n" + body;
    if (kind != 0) out += "</CONCLUSION>\n";
    return out;
  }

 private:
  static double unit_draw(std::uint64_t h) {
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdULL;
    h ^= h >> 33;
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  }

  static std::vector<std::string> answer_lines(const std::string& prompt) {
    std::size_t at = std::string::npos;
    std::size_t skip = 0;
    for (std::string_view head : {kAnchorHeading, kGoldHeading}) {
      const std::size_t p = prompt.rfind(head);
      if (p != std::string::npos && (at == std::string::npos || p > at)) {
        at = p;
        skip = head.size();
      }
    }
    std::vector<std::string> out;
    if (at == std::string::npos) return out;
    std::istringstream in(prompt.substr(at + skip));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!utf8::trim(line).empty()) out.push_back(line);
    }
    return out;
  }

  Options opts_;
};

// --- serialization --------------------------------------------------------

inline nlohmann::json rows_json(const std::vector<ConclusionRow>& rows) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& r : rows) {
    a.push_back({{"surface", r.surface},
                 {"unit", r.unit ? nlohmann::json(*r.unit) : nlohmann::json(nullptr)},
                 {"modifiers", r.modifiers}});
  }
  return a;
}

inline nlohmann::json to_json(const AugExample& ex) {
  std::vector<ConclusionRow> rows;
  for (const auto& q : ex.anchors) rows.push_back(anchor_row(q));
  return {{"doc_id", ex.doc_id},         {"text", ex.text},
          {"anchors", rows_json(rows)},  {"trajectory", ex.trajectory},
          {"accepted", ex.accepted()},   {"status", std::string(to_string(ex.status))},
          {"reason", ex.reason}};
}

inline nlohmann::json to_json(const TraceExample& ex) {
  return {{"doc_id", ex.doc_id},
          {"text", ex.text},
          {"gold", rows_json(gold_rows(ex.gold))},
          {"trajectory", ex.trajectory},
          {"accepted", ex.accepted()},
          {"status", std::string(to_string(ex.status))},
          {"reason", ex.reason}};
}

inline nlohmann::json to_json(const PipelineCounts& c) {
  return {{"inputs", c.inputs},   {"accepted", c.accepted}, {"rejected", c.rejected},
          {"skipped", c.skipped}, {"failed", c.failed},     {"failure_rate", c.failure_rate()}};
}

// JSONL of {doc_id, text}. Line numbers are 1-based.
inline std::vector<Document> load_documents_jsonl(std::istream& in) {
  std::vector<Document> out;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (utf8::trim(line).empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ParseError("expected a JSON object", line_no, 1);
    if (!j.contains("doc_id") || !j["doc_id"].is_string() || !j.contains("text") || !j["text"].is_string()) {
      throw ParseError("expected string fields doc_id and text", line_no, 1);
    }
    Document d{j["doc_id"].get<std::string>(), j["text"].get<std::string>()};
    if (!seen.insert(d.doc_id).second) throw ParseError("duplicate document id '" + d.doc_id + "'", line_no, 1);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace measqc
