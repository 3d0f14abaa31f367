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

// MeasEval-style evaluation.
//
// Spans of one class in one document are matched one-to-one so that total
// credit is maximal. Credit per pair depends on the criterion:
//
//   strict   1 for identical offsets, else 0
//   relaxed  token F1 of the two surfaces when the spans overlap
//   overlap  1 when the spans overlap
//
// Precision = credit / #predicted, recall = credit / #gold. A class empty
// on both sides scores 1. Unit and Modifier are attributes of Quantities:
// a pair counts when the quantities earn credit and the unit strings (or
// modifier sets) are equal. A relation pair earns the product of its
// endpoints' credits.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "measqc/annotation.hpp"
#include "measqc/error.hpp"
#include "measqc/tokens.hpp"

namespace measqc {

enum class MatchCriterion { Strict, Relaxed, Overlap };

inline std::string_view to_string(MatchCriterion c) {
  switch (c) {
    case MatchCriterion::Strict: return "strict";
    case MatchCriterion::Relaxed: return "relaxed";
    case MatchCriterion::Overlap: return "overlap";
  }
  return "?";
}

inline MatchCriterion criterion_from_string(std::string_view s) {
  if (s == "strict") return MatchCriterion::Strict;
  if (s == "relaxed") return MatchCriterion::Relaxed;
  if (s == "overlap") return MatchCriterion::Overlap;
  throw ConfigError("unknown criterion '" + std::string(s) + "' (strict|relaxed|overlap)");
}

enum class Averaging { Macro, Micro };

inline std::string_view to_string(Averaging a) { return a == Averaging::Macro ? "macro" : "micro"; }

// Credit of a predicted span against a gold span of the same class.
// Ungrounded predictions (no span) can only earn relaxed surface credit.
inline Rational span_credit(const Annotation& pred, const Annotation& gold, MatchCriterion c) {
  const bool grounded = pred.span && gold.span;
  switch (c) {
    case MatchCriterion::Strict:
      return grounded && *pred.span == *gold.span ? Rational{1, 1} : Rational{0, 1};
    case MatchCriterion::Overlap:
      if (grounded) return pred.span->overlaps(*gold.span) ? Rational{1, 1} : Rational{0, 1};
      return token_counts(pred.surface, gold.surface).common > 0 ? Rational{1, 1} : Rational{0, 1};
    case MatchCriterion::Relaxed: {
      if (grounded && !pred.span->overlaps(*gold.span)) return {0, 1};
      const auto tc = token_counts(pred.surface, gold.surface);
      if (tc.predicted == 0 || tc.gold == 0) return {0, 1};
      return f1_rational(tc);
    }
  }
  return {0, 1};
}

// Maximum-weight one-to-one assignment (Hungarian method on exact
// rationals). Returns, for every row, the assigned column or -1.
inline std::vector<int> max_weight_assignment(const std::vector<std::vector<Rational>>& w) {
  const std::size_t rows = w.size();
  const std::size_t cols = rows ? w[0].size() : 0;
  std::vector<int> out(rows, -1);
  if (rows == 0 || cols == 0) return out;
  const std::size_t n = std::max(rows, cols);
  auto cost = [&](std::size_t i, std::size_t j) -> Rational {
    if (i >= rows || j >= cols) return {0, 1};
    return -w[i][j];
  };
  const Rational kInf{std::int64_t{1} << 40, 1};
  std::vector<Rational> u(n + 1), v(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<Rational> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      Rational delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const Rational cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] = u[p[j]] + delta;
          v[j] = v[j] - delta;
        } else {
          minv[j] = minv[j] - delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  for (std::size_t j = 1; j <= n; ++j) {
    if (p[j] != 0 && p[j] - 1 < rows && j - 1 < cols) out[p[j] - 1] = static_cast<int>(j - 1);
  }
  return out;
}

struct MatchedPair {
  std::string gold_id;
  std::string pred_id;
  Rational credit;
};

struct Matching {
  std::vector<MatchedPair> pairs;  // zero-credit pairs excluded
  Rational credit;
  std::size_t n_pred = 0;
  std::size_t n_gold = 0;

  double precision() const { return n_pred ? (credit / Rational{static_cast<std::int64_t>(n_pred), 1}).value() : 0.0; }
  double recall() const { return n_gold ? (credit / Rational{static_cast<std::int64_t>(n_gold), 1}).value() : 0.0; }
};

// Optimal matching for an arbitrary pairwise weight.
template <typename Weight>
Matching match_weighted(const std::vector<const Annotation*>& preds,
                        const std::vector<const Annotation*>& golds, Weight weight) {
  Matching m;
  m.n_pred = preds.size();
  m.n_gold = golds.size();
  if (preds.empty() || golds.empty()) return m;
  std::vector<std::vector<Rational>> w(preds.size(), std::vector<Rational>(golds.size()));
  for (std::size_t i = 0; i < preds.size(); ++i) {
    for (std::size_t j = 0; j < golds.size(); ++j) w[i][j] = weight(*preds[i], *golds[j]);
  }
  const auto assign = max_weight_assignment(w);
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (assign[i] < 0) continue;
    const Rational c = w[i][static_cast<std::size_t>(assign[i])];
    if (c.num == 0) continue;
    m.pairs.push_back({golds[static_cast<std::size_t>(assign[i])]->annot_id, preds[i]->annot_id, c});
    m.credit = m.credit + c;
  }
  return m;
}

inline Matching match_spans(const std::vector<Annotation>& preds, const std::vector<Annotation>& golds,
                            MatchCriterion criterion) {
  std::set<AnnotationClass> classes;
  for (const auto& a : preds) classes.insert(a.cls);
  for (const auto& a : golds) classes.insert(a.cls);
  if (classes.size() > 1) throw Error("match_spans needs annotations of a single class");
  std::vector<const Annotation*> p, g;
  for (const auto& a : preds) p.push_back(&a);
  for (const auto& a : golds) g.push_back(&a);
  return match_weighted(p, g, [&](const Annotation& a, const Annotation& b) {
    return span_credit(a, b, criterion);
  });
}

struct ClassScores {
  AnnotationClass cls = AnnotationClass::Quantity;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  Rational credit;
  std::size_t n_pred = 0;
  std::size_t n_gold = 0;
  std::vector<MatchedPair> matched_pairs;

  void add(const Matching& m) {
    credit = credit + m.credit;
    n_pred += m.n_pred;
    n_gold += m.n_gold;
    matched_pairs.insert(matched_pairs.end(), m.pairs.begin(), m.pairs.end());
  }

  // Derives P/R/F1 from the accumulated counts.
  void finish() {
    if (n_pred == 0 && n_gold == 0) {
      precision = recall = f1 = 1.0;
      return;
    }
    const Rational p = n_pred ? credit / Rational{static_cast<std::int64_t>(n_pred), 1} : Rational{};
    const Rational r = n_gold ? credit / Rational{static_cast<std::int64_t>(n_gold), 1} : Rational{};
    precision = p.value();
    recall = r.value();
    f1 = (p + r).num == 0 ? 0.0 : (Rational{2, 1} * p * r / (p + r)).value();
  }
};

namespace detail {

inline std::vector<const Annotation*> of_class(const std::vector<Annotation>& anns, AnnotationClass c) {
  std::vector<const Annotation*> out;
  for (const auto& a : anns) {
    if (a.cls == c) out.push_back(&a);
  }
  return out;
}

inline std::map<std::string, const Annotation*> by_id(const std::vector<Annotation>& anns) {
  std::map<std::string, const Annotation*> out;
  for (const auto& a : anns) out[a.annot_id] = &a;
  return out;
}

inline std::vector<std::string> sorted_set(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

// Per-class scores for one document's predictions against its gold.
inline std::array<ClassScores, 9> score_document(const std::vector<Annotation>& preds,
                                                 const std::vector<Annotation>& golds,
                                                 MatchCriterion criterion) {
  std::array<ClassScores, 9> out;
  for (std::size_t k = 0; k < kAllClasses.size(); ++k) out[k].cls = kAllClasses[k];
  auto credit = [&](const Annotation& a, const Annotation& b) { return span_credit(a, b, criterion); };

  for (auto c : {AnnotationClass::Quantity, AnnotationClass::MeasuredEntity,
                 AnnotationClass::MeasuredProperty, AnnotationClass::Qualifier}) {
    out[static_cast<std::size_t>(c)].add(
        match_weighted(detail::of_class(preds, c), detail::of_class(golds, c), credit));
  }

  // Unit and Modifier: the largest one-to-one set of quantity pairs that
  // earn credit and agree on the attribute.
  const auto pq = detail::of_class(preds, AnnotationClass::Quantity);
  const auto gq = detail::of_class(golds, AnnotationClass::Quantity);
  const auto pid = detail::by_id(preds);
  const auto gid = detail::by_id(golds);
  auto with_unit = [](const std::vector<const Annotation*>& v) {
    std::vector<const Annotation*> out;
    for (const auto* a : v) {
      if (a->unit()) out.push_back(a);
    }
    return out;
  };
  auto with_mods = [](const std::vector<const Annotation*>& v) {
    std::vector<const Annotation*> out;
    for (const auto* a : v) {
      if (!a->modifiers().empty()) out.push_back(a);
    }
    return out;
  };
  const Matching unit_m =
      match_weighted(with_unit(pq), with_unit(gq), [&](const Annotation& p, const Annotation& g) {
        const bool same = utf8::trim(*p.unit()) == utf8::trim(*g.unit());
        return same && credit(p, g).num > 0 ? Rational{1, 1} : Rational{0, 1};
      });
  const Matching mod_m =
      match_weighted(with_mods(pq), with_mods(gq), [&](const Annotation& p, const Annotation& g) {
        const bool same = detail::sorted_set(p.modifiers()) == detail::sorted_set(g.modifiers());
        return same && credit(p, g).num > 0 ? Rational{1, 1} : Rational{0, 1};
      });
  out[static_cast<std::size_t>(AnnotationClass::Unit)].add(unit_m);
  out[static_cast<std::size_t>(AnnotationClass::Modifier)].add(mod_m);

  for (auto c : kRelationClasses) {
    auto rel_credit = [&](const Annotation& p, const Annotation& g) -> Rational {
      auto ps = pid.find(p.source_id), pt = pid.find(p.target_id);
      auto gs = gid.find(g.source_id), gt = gid.find(g.target_id);
      if (ps == pid.end() || pt == pid.end() || gs == gid.end() || gt == gid.end()) return {0, 1};
      if (ps->second->cls != gs->second->cls || pt->second->cls != gt->second->cls) return {0, 1};
      return credit(*ps->second, *gs->second) * credit(*pt->second, *gt->second);
    };
    out[static_cast<std::size_t>(c)].add(
        match_weighted(detail::of_class(preds, c), detail::of_class(golds, c), rel_credit));
  }
  for (auto& s : out) s.finish();
  return out;
}

// Relation-class scores between predicted and gold measurement groups.
inline std::array<ClassScores, 3> score_relations(const std::vector<MeasurementGroup>& pred_groups,
                                                  const std::vector<MeasurementGroup>& gold_groups,
                                                  MatchCriterion criterion) {
  std::vector<Annotation> preds, golds;
  for (const auto& g : pred_groups) {
    for (const auto* a : g.members()) preds.push_back(*a);
  }
  for (const auto& g : gold_groups) {
    for (const auto* a : g.members()) golds.push_back(*a);
  }
  const auto all = score_document(preds, golds, criterion);
  return {all[6], all[7], all[8]};
}

struct ScoreReport {
  std::array<ClassScores, 9> per_class;
  double overall = 0;
  MatchCriterion criterion = MatchCriterion::Relaxed;
  Averaging averaging = Averaging::Macro;
  std::size_t n_documents = 0;

  const ClassScores& of(AnnotationClass c) const { return per_class[static_cast<std::size_t>(c)]; }
};

inline ScoreReport score_report(const Corpus& pred, const Corpus& gold, MatchCriterion criterion,
                                 Averaging averaging = Averaging::Macro) {
  std::vector<std::string> unknown;
  for (const auto& [doc, anns] : pred.annotations) {
    if (!anns.empty() && !gold.annotations.count(doc) && !gold.documents.count(doc)) {
      unknown.push_back(doc);
    }
  }
  if (!unknown.empty()) throw ValidationError("predictions for documents absent from gold", unknown);

  std::set<std::string> docs;
  for (const auto& [d, _] : gold.annotations) docs.insert(d);
  for (const auto& [d, _] : gold.documents) docs.insert(d);

  ScoreReport r;
  r.criterion = criterion;
  r.averaging = averaging;
  r.n_documents = docs.size();
  for (std::size_t k = 0; k < kAllClasses.size(); ++k) r.per_class[k].cls = kAllClasses[k];
  for (const auto& d : docs) {
    const auto per_doc = score_document(pred.of(d), gold.of(d), criterion);
    for (std::size_t k = 0; k < per_doc.size(); ++k) {
      r.per_class[k].credit = r.per_class[k].credit + per_doc[k].credit;
      r.per_class[k].n_pred += per_doc[k].n_pred;
      r.per_class[k].n_gold += per_doc[k].n_gold;
      r.per_class[k].matched_pairs.insert(r.per_class[k].matched_pairs.end(),
                                          per_doc[k].matched_pairs.begin(),
                                          per_doc[k].matched_pairs.end());
    }
  }
  for (auto& s : r.per_class) s.finish();
  if (averaging == Averaging::Macro) {
    double sum = 0;
    for (const auto& s : r.per_class) sum += s.f1;
    r.overall = sum / static_cast<double>(r.per_class.size());
  } else {
    ClassScores pooled;
    for (const auto& s : r.per_class) {
      pooled.credit = pooled.credit + s.credit;
      pooled.n_pred += s.n_pred;
      pooled.n_gold += s.n_gold;
    }
    pooled.finish();
    r.overall = pooled.f1;
  }
  return r;
}

inline nlohmann::json to_json(const ScoreReport& r) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& s : r.per_class) {
    classes.push_back({{"class", to_string(s.cls)},
                       {"precision", s.precision},
                       {"recall", s.recall},
                       {"f1", s.f1},
                       {"credit", s.credit.value()},
                       {"n_pred", s.n_pred},
                       {"n_gold", s.n_gold}});
  }
  return {{"criterion", to_string(r.criterion)},
          {"averaging", to_string(r.averaging)},
          {"documents", r.n_documents},
          {"per_class", classes},
          {"overall", r.overall}};
}

inline std::string format_table(const ScoreReport& r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << std::left << std::setw(18) << "class" << std::right << std::setw(10) << "P"
      << std::setw(10) << "R" << std::setw(10) << "F1" << std::setw(8) << "pred" << std::setw(8)
      << "gold" << '\n';
  for (const auto& s : r.per_class) {
    out << std::left << std::setw(18) << to_string(s.cls) << std::right << std::setw(10)
        << s.precision << std::setw(10) << s.recall << std::setw(10) << s.f1 << std::setw(8)
        << s.n_pred << std::setw(8) << s.n_gold << '\n';
  }
  out << std::left << std::setw(18) << ("overall (" + std::string(to_string(r.averaging)) + ")")
      << std::right << std::setw(30) << r.overall << '\n';
  out << "criterion: " << to_string(r.criterion) << '\n';
  return out.str();
}

// --- agreement --------------------------------------------------------------

// Per-token in-class (1) / out (0) labels of one class over a document.
inline std::vector<int> class_token_labels(const Document& doc, const std::vector<Annotation>& anns,
                                           AnnotationClass cls) {
  const auto toks = tokenize(utf8::decode(doc.text));
  std::vector<int> out(toks.size(), 0);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    for (const auto& a : anns) {
      if (a.cls == cls && a.span && a.span->overlaps(toks[i].span)) {
        out[i] = 1;
        break;
      }
    }
  }
  return out;
}

// Nominal Krippendorff alpha for two coders with no missing values,
// computed from the coincidence matrix. Returns 1 when no disagreement is
// possible (a single label value overall).
template <typename Label>
double krippendorff_alpha(const std::vector<Label>& a, const std::vector<Label>& b) {
  if (a.size() != b.size()) throw Error("krippendorff_alpha: label sequences differ in length");
  if (a.empty()) return 1.0;
  std::map<Label, std::map<Label, double>> o;
  for (std::size_t i = 0; i < a.size(); ++i) {
    o[a[i]][b[i]] += 1.0;
    o[b[i]][a[i]] += 1.0;
  }
  std::map<Label, double> n_c;
  double n = 0;
  for (const auto& [c, row] : o) {
    for (const auto& [k, v] : row) {
      n_c[c] += v;
      n += v;
    }
  }
  double observed = 0;
  for (const auto& [c, row] : o) {
    for (const auto& [k, v] : row) {
      if (c != k) observed += v;
    }
  }
  double expected = 0;
  for (const auto& [c, nc] : n_c) {
    for (const auto& [k, nk] : n_c) {
      if (c != k) expected += nc * nk;
    }
  }
  if (expected == 0) return 1.0;
  return 1.0 - (n - 1.0) * observed / expected;
}

}  // namespace measqc
