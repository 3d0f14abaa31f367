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

#include <chrono>
#include <random>
#include <sstream>
#include <thread>

#include "fixtures.hpp"
#include "measqc/dataset.hpp"
#include "measqc/dataset_http.hpp"
#include "measqc/reward_quantity.hpp"
#include "synthetic.hpp"

namespace measqc {
namespace {

std::string jsonl(const std::vector<AugExample>& xs) {
  std::string out;
  for (const auto& x : xs) out += to_json(x).dump() + "\n";
  return out;
}

std::string jsonl(const std::vector<TraceExample>& xs) {
  std::string out;
  for (const auto& x : xs) out += to_json(x).dump() + "\n";
  return out;
}

std::vector<Annotation> furnace_gold_list() {
  auto c = fixtures::furnace_gold();
  return c.annotations.begin()->second;
}

TEST(Prompt, TraceTemplateCarriesGoldBlock) {
  const auto doc = fixtures::furnace_document();
  const auto tpl = PromptTemplate::builtin(TemplateId::Trace);
  const std::string p = render_trace_prompt(tpl, doc.text, furnace_gold_list());
  EXPECT_NE(p.find("The gold answers:\nup to 798 °C\t°C\tIsRange\n"), std::string::npos);
  EXPECT_NE(p.find(doc.text), std::string::npos);
  EXPECT_TRUE(template_placeholders(p).empty());
  EXPECT_EQ(p, render_trace_prompt(tpl, doc.text, furnace_gold_list()));
}

TEST(Prompt, AugTemplateCarriesAnchors) {
  const auto doc = fixtures::furnace_document();
  const auto tpl = PromptTemplate::builtin(TemplateId::Aug);
  const auto anchors = extract_quantities(doc.text);
  ASSERT_EQ(anchors.size(), 1u);
  const std::string p = render_aug_prompt(tpl, doc.text, anchors);
  EXPECT_NE(p.find("The reference answer from quantulum:\nup to 798 °C\t°C\tIsRange\n"), std::string::npos);
  EXPECT_TRUE(template_placeholders(p).empty());
}

TEST(Prompt, Errors) {
  const auto aug = PromptTemplate::builtin(TemplateId::Aug);
  EXPECT_THROW(render_aug_prompt(aug, "no numbers here", {}), ValidationError);
  EXPECT_THROW(render_prompt(aug, {{"TEXT", "x"}}), ConfigError);
  try {
    render_prompt(aug, {{"TEXT", "x"}});
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("{ANCHORS}"), std::string::npos);
  }
  // Bound values are not rescanned for placeholders.
  PromptTemplate t{TemplateId::Trace, "A {TEXT} B {GOLD}"};
  EXPECT_EQ(render_prompt(t, {{"TEXT", "{GOLD}"}, {"GOLD", "g"}}), "A {GOLD} B g");
  // Braces that do not form a placeholder are left alone.
  PromptTemplate u{TemplateId::Trace, "{x} {} {TEXT} {GOLD"};
  EXPECT_EQ(render_prompt(u, {{"TEXT", "t"}}), "{x} {} t {GOLD");
  PromptTemplate bad{TemplateId::Trace, "only {TEXT}"};
  EXPECT_THROW(bad.check(), ConfigError);
  EXPECT_NO_THROW(PromptTemplate::builtin(TemplateId::Aug).check());
  EXPECT_NO_THROW(PromptTemplate::builtin(TemplateId::Trace).check());
  EXPECT_THROW(template_id_from_string("P_other"), ConfigError);
}

TEST(Mock, PureFunctionOfPromptAndSeed) {
  MockClient m({0.3, 0.3});
  GenerationParams a;
  a.seed = 7;
  GenerationParams b = a;
  b.temperature = 0.9;  // ignored by the mock
  int differs = 0;
  for (int i = 0; i < 40; ++i) {
    const std::string prompt = "The gold answers:\n" + std::to_string(i) + " mg\tmg\t\n";
    auto call = [&](const GenerationParams& p) {
      try {
        return m.send(prompt, p);
      } catch (const Error& e) {
        return std::string("!") + e.what();
      }
    };
    EXPECT_EQ(call(a), call(a));
    EXPECT_EQ(call(a), call(b));
    GenerationParams c = a;
    c.seed = 8;
    differs += call(a) != call(c);
  }
  EXPECT_GT(differs, 0);
}

TEST(AugPipeline, SingleAnchorAndSkip) {
  MockClient mock;
  const auto tpl = PromptTemplate::builtin(TemplateId::Aug);
  const auto out = build_aug_candidates({{"a", "heated to 100 mg"}, {"b", "no quantities in this sentence"}}, mock, tpl);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].status, ExampleStatus::Accepted) << out[0].reason;
  ASSERT_EQ(out[0].anchors.size(), 1u);
  EXPECT_EQ(out[0].anchors[0].surface, "100 mg");
  EXPECT_EQ(reward_format(out[0].trajectory), 1.0);
  const auto rows = parse_quantity_trace(out[0].trajectory).conclusion_rows;
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].surface, "100 mg");
  EXPECT_EQ(out[1].status, ExampleStatus::Skipped);
  const auto c = count_statuses(out);
  EXPECT_EQ(c.accepted, 1u);
  EXPECT_EQ(c.skipped, 1u);
  EXPECT_THROW(build_aug_candidates({}, mock, PromptTemplate::builtin(TemplateId::Trace)), ConfigError);
}

// 50 texts, half with a quantity by construction. The expected status of
// each text is replayed independently from the mock and recounted.
TEST(AugPipeline, ConservationOnFiftyTexts) {
  std::vector<Document> docs;
  std::vector<bool> has_quantity;
  std::mt19937 rng(50);
  for (int i = 0; i < 50; ++i) {
    const bool q = i % 2 == 0;
    std::string text = "Sample " + std::string(1, static_cast<char>('A' + i % 26)) + " was stored in the dark";
    if (q) text += " at " + std::to_string(1 + rng() % 300) + " K";
    docs.push_back({"t" + std::to_string(i), text + "."});
    has_quantity.push_back(q);
  }
  MockClient mock({0.15, 0.35});
  const auto tpl = PromptTemplate::builtin(TemplateId::Aug);
  PipelineOptions opts;
  opts.params.seed = 11;
  opts.max_in_flight = 8;
  const auto out = build_aug_candidates(docs, mock, tpl, opts);
  ASSERT_EQ(out.size(), 50u);

  std::size_t acc = 0, rej = 0, skip = 0, fail = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(out[i].doc_id, docs[i].doc_id);
    ExampleStatus expect;
    if (!has_quantity[i]) {
      expect = ExampleStatus::Skipped;
    } else {
      const auto prompt = render_aug_prompt(tpl, docs[i].text, extract_quantities(docs[i].text));
      try {
        const std::string h = mock.send(prompt, opts.params);
        const bool closed = h.find("</CONCLUSION>") != std::string::npos;
        expect = closed ? ExampleStatus::Accepted : ExampleStatus::Rejected;
      } catch (const Error&) {
        expect = ExampleStatus::Failed;
      }
    }
    EXPECT_EQ(out[i].status, expect) << docs[i].text;
    switch (expect) {
      case ExampleStatus::Accepted: ++acc; break;
      case ExampleStatus::Rejected: ++rej; break;
      case ExampleStatus::Skipped: ++skip; break;
      case ExampleStatus::Failed: ++fail; break;
    }
  }
  const auto c = count_statuses(out);
  EXPECT_TRUE(c.conserved());
  EXPECT_EQ(c.inputs, 50u);
  EXPECT_EQ(c.accepted, acc);
  EXPECT_EQ(c.rejected, rej);
  EXPECT_EQ(c.skipped, skip);
  EXPECT_EQ(c.failed, fail);
  EXPECT_EQ(acc + rej + skip + fail, 50u);
  // The noise settings must exercise every outcome.
  EXPECT_GT(acc, 0u);
  EXPECT_GT(rej, 0u);
  EXPECT_GT(fail, 0u);
  EXPECT_EQ(skip, 25u);
  EXPECT_DOUBLE_EQ(c.failure_rate(), static_cast<double>(fail) / 25.0);
  for (const auto& x : out) {
    if (x.accepted()) EXPECT_EQ(reward_format(x.trajectory), 1.0);
    if (x.status == ExampleStatus::Failed) EXPECT_NE(x.reason.find("generation failed"), std::string::npos);
  }

  // Output order and content do not depend on the in-flight cap.
  opts.max_in_flight = 1;
  EXPECT_EQ(jsonl(build_aug_candidates(docs, mock, tpl, opts)), jsonl(out));
  opts.max_in_flight = 8;
  EXPECT_EQ(jsonl(build_aug_candidates(docs, mock, tpl, opts)), jsonl(out));
}

TEST(ValidateTrace, FurnaceCases) {
  const auto gold = gold_rows(furnace_gold_list());
  ASSERT_EQ(gold.size(), 1u);
  const std::string trace = fixtures::read_fixture("furnace_trace.txt");
  EXPECT_TRUE(validate_trace(trace, gold).accepted);

  TraceExample ex;
  ex.gold = furnace_gold_list();
  ex.trajectory = trace;
  EXPECT_TRUE(validate_trace(ex).accepted);

  const auto dropped = validate_trace(synthetic::make_trace("798 °C\t°C\tIsRange\n"), gold);
  EXPECT_FALSE(dropped.accepted);
  EXPECT_NE(dropped.reason.find("surface mismatch"), std::string::npos) << dropped.reason;
  EXPECT_NE(dropped.reason.find("'up to 798 °C'"), std::string::npos);
  EXPECT_NE(dropped.reason.find("'798 °C'"), std::string::npos);

  const auto extra = validate_trace(synthetic::make_trace("up to 798 °C\t°C\tIsRange\n5 h\th\t\n"), gold);
  EXPECT_FALSE(extra.accepted);
  EXPECT_NE(extra.reason.find("extra row"), std::string::npos);

  const auto unit = validate_trace(synthetic::make_trace("up to 798 °C\tK\tIsRange\n"), gold);
  EXPECT_NE(unit.reason.find("unit mismatch"), std::string::npos);
  const auto mods = validate_trace(synthetic::make_trace("up to 798 °C\t°C\t\n"), gold);
  EXPECT_NE(mods.reason.find("modifier mismatch"), std::string::npos);
  const auto missing = validate_trace(synthetic::make_trace(""), gold);
  EXPECT_NE(missing.reason.find("missing row"), std::string::npos);

  EXPECT_EQ(validate_trace("no tags at all", gold).reason, "no conclusion");
  EXPECT_EQ(validate_trace(synthetic::drop_tag(trace, 11), gold).reason, "no conclusion");
  EXPECT_FALSE(validate_trace(synthetic::make_trace("a\tb\tc\td\n"), gold).accepted);

  // Whitespace inside the surface and around fields is presentation.
  EXPECT_TRUE(validate_trace(synthetic::make_trace("up  to 798 °C \t °C \t IsRange\n"), gold).accepted);
}

TEST(ValidateTrace, OrderInsensitiveMultiset) {
  const std::vector<ConclusionRow> gold = {{"5 mg", std::string("mg"), {}},
                                           {"5 mg", std::string("mg"), {}},
                                           {"about 3 h", std::string("h"), {"IsApproximate", "IsRange"}}};
  EXPECT_TRUE(validate_trace(synthetic::make_trace("about 3 h\th\tIsRange,IsApproximate\n5 mg\tmg\t\n5 mg\tmg\t\n"),
                             gold)
                  .accepted);
  // One copy of a repeated row is not the multiset.
  EXPECT_FALSE(validate_trace(synthetic::make_trace("about 3 h\th\tIsRange,IsApproximate\n5 mg\tmg\t\n"), gold).accepted);
  // Repeated modifiers collapse to the set.
  EXPECT_TRUE(validate_trace(
                  synthetic::make_trace("5 mg\tmg\t\n5 mg\tmg\t\nabout 3 h\th\tIsRange,IsRange,IsApproximate\n"), gold)
                  .accepted);
}

// Every single-field perturbation of 200 random gold sets flips acceptance.
TEST(ValidateTrace, FlipRateOnTwoHundredGoldSets) {
  std::mt19937 rng(3);
  std::size_t perturbations = 0, flipped = 0;
  std::set<std::string> kinds;
  for (int s = 0; s < 200; ++s) {
    const auto gold = synthetic::random_rows(rng);
    auto shuffled = gold;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    ASSERT_TRUE(validate_trace(synthetic::make_trace(format_conclusion_rows(shuffled)), gold).accepted);
    for (const auto& p : synthetic::single_field_perturbations(gold)) {
      ++perturbations;
      kinds.insert(p.kind);
      const auto v = validate_trace(synthetic::make_trace(format_conclusion_rows(p.rows)), gold);
      flipped += !v.accepted;
      EXPECT_FALSE(v.accepted) << p.kind << " on set " << s;
      EXPECT_FALSE(v.reason.empty());
    }
  }
  EXPECT_EQ(flipped, perturbations);
  EXPECT_EQ(kinds, (std::set<std::string>{"surface", "unit", "modifier", "extra row", "dropped row"}));
}

TEST(TracePipeline, AcceptedExamplesPassTheFilter) {
  std::mt19937 rng(9);
  auto corpus = synthetic::make_corpus(9, 40);
  std::vector<TraceInput> inputs;
  for (const auto& [id, doc] : corpus.documents) inputs.push_back({doc, corpus.annotations[id]});
  MockClient mock({0.1, 0.4});
  PipelineOptions opts;
  opts.params.seed = 5;
  opts.max_in_flight = 6;
  const auto tpl = PromptTemplate::builtin(TemplateId::Trace);
  const auto out = build_trace_examples(inputs, mock, tpl, opts);
  ASSERT_EQ(out.size(), inputs.size());
  const auto c = count_statuses(out);
  EXPECT_TRUE(c.conserved());
  EXPECT_GT(c.accepted, 0u);
  EXPECT_GT(c.rejected, 0u);
  EXPECT_GT(c.failed, 0u);
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].doc_id, inputs[i].doc.doc_id);
    if (out[i].accepted()) {
      EXPECT_TRUE(validate_trace(out[i].trajectory, gold_rows(inputs[i].gold)).accepted);
    } else if (out[i].status == ExampleStatus::Rejected) {
      EXPECT_FALSE(out[i].reason.empty());
    }
  }
  // Byte-identical reruns.
  EXPECT_EQ(jsonl(build_trace_examples(inputs, mock, tpl, opts)), jsonl(out));
  EXPECT_THROW(build_trace_examples(inputs, mock, PromptTemplate::builtin(TemplateId::Aug)), ConfigError);
}

TEST(Jsonl, DocumentsReader) {
  std::istringstream ok("{\"doc_id\":\"a\",\"text\":\"x\"}\n\n{\"doc_id\":\"b\",\"text\":\"y\"}\n");
  const auto docs = load_documents_jsonl(ok);
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[1].text, "y");
  std::istringstream dup("{\"doc_id\":\"a\",\"text\":\"x\"}\n{\"doc_id\":\"a\",\"text\":\"y\"}\n");
  EXPECT_THROW(load_documents_jsonl(dup), ParseError);
  std::istringstream bad("{\"doc_id\":1}\n");
  EXPECT_THROW(load_documents_jsonl(bad), ParseError);
}

TEST(Http, EndpointParsing) {
  auto e = HttpEndpoint::parse("http://127.0.0.1:8080/v1/chat/completions");
  EXPECT_EQ(e.origin, "http://127.0.0.1:8080");
  EXPECT_EQ(e.path, "/v1/chat/completions");
  EXPECT_EQ(HttpEndpoint::parse("http://host").path, "/v1/chat/completions");
  EXPECT_THROW(HttpEndpoint::parse("127.0.0.1:8080"), ConfigError);
  EXPECT_THROW(HttpEndpoint::parse("ftp://host/x"), ConfigError);
  EXPECT_EQ(HttpClient::response_text(R"({"choices":[{"message":{"content":"hi"}}]})"), "hi");
  EXPECT_EQ(HttpClient::response_text(R"({"choices":[{"text":"yo"}]})"), "yo");
  EXPECT_THROW(HttpClient::response_text("{}"), Error);
  EXPECT_THROW(HttpClient::response_text("nope"), Error);
}

// The adapter against a loopback server that answers with the mock.
TEST(Http, LoopbackServer) {
  httplib::Server server;
  MockClient mock;
  std::atomic<int> unauthorized{0};
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    if (req.get_header_value("Authorization") != "Bearer k3y") {
      ++unauthorized;
      res.status = 401;
      return;
    }
    auto j = nlohmann::json::parse(req.body);
    GenerationParams p;
    p.seed = j["seed"].get<std::uint64_t>();
    const std::string text = mock.send(j["messages"][0]["content"].get<std::string>(), p);
    res.set_content(nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}}}.dump(),
                    "application/json");
  });
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  const std::string url = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
  HttpClient client(url, "k3y", "test-model", 10);
  const auto tpl = PromptTemplate::builtin(TemplateId::Aug);
  std::vector<Document> docs = {{"a", "heated to 100 mg"}, {"b", "kept at 300 K for 2 h"}};
  PipelineOptions opts;
  opts.max_in_flight = 2;
  const auto via_http = build_aug_candidates(docs, client, tpl, opts);
  const auto direct = build_aug_candidates(docs, mock, tpl, opts);
  EXPECT_EQ(jsonl(via_http), jsonl(direct));
  EXPECT_EQ(count_statuses(via_http).accepted, 2u);

  HttpClient wrong_key(url, "nope", "test-model", 10);
  const auto denied = build_aug_candidates(docs, wrong_key, tpl, opts);
  EXPECT_EQ(count_statuses(denied).failed, 2u);
  EXPECT_NE(denied[0].reason.find("HTTP 401"), std::string::npos);
  EXPECT_EQ(unauthorized.load(), 2);

  server.stop();
  th.join();

  // A closed port fails every request without stopping the pipeline.
  const auto down = build_aug_candidates(docs, client, tpl, opts);
  EXPECT_EQ(count_statuses(down).failed, 2u);
  EXPECT_TRUE(count_statuses(down).conserved());
}

}  // namespace
}  // namespace measqc
