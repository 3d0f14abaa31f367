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

// The measqc command line. run_cli() is callable in-process so tests can
// drive it without spawning the binary.
//
// Exit codes: 0 success, 1 I/O, 2 validation, 3 config.

#pragma once

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "measqc/bindings.hpp"
#include "measqc/dataset_http.hpp"
#include "measqc/measqc.hpp"

namespace measqc::cli {

enum ExitCode : int { kOk = 0, kIo = 1, kValidation = 2, kConfig = 3 };

inline std::string read_file(const std::string& path) {
  if (!std::filesystem::is_regular_file(path)) throw IoError("cannot read " + path + ": no such file");
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  if (f.bad()) throw IoError("error while reading " + path);
  return ss.str();
}

// Writes to `path`, or to `out` when path is empty or "-".
inline void write_output(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path);
  f << data;
  if (!f) throw IoError("error while writing " + path);
}

// TSV (doc_id<TAB>text), JSONL ({doc_id, text}) or a directory of text files.
inline std::map<std::string, Document> load_docs(const std::string& path) {
  if (std::filesystem::is_directory(path)) return load_documents_dir(path);
  const std::string text = read_file(path);
  std::istringstream in(text);
  if (std::filesystem::path(path).extension() == ".jsonl") {
    std::map<std::string, Document> out;
    for (auto& d : load_documents_jsonl(in)) out.emplace(d.doc_id, std::move(d));
    return out;
  }
  return load_documents_tsv(in);
}

inline Corpus load_corpus(const std::string& path, const std::map<std::string, Document>* docs) {
  return load_measeval_tsv(read_file(path), docs);
}

// Each non-blank line as a JSON object.
inline std::vector<nlohmann::json> read_jsonl(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<nlohmann::json> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (utf8::trim(line).empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ParseError(path + ": expected a JSON object", line_no, 1);
    out.push_back(std::move(j));
  }
  return out;
}

inline std::string string_field(const nlohmann::json& j, const char* key, std::size_t line_no) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ValidationError("record " + std::to_string(line_no) + " lacks string field " + key);
  }
  return j[key].get<std::string>();
}

inline std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool quiet = false;

  // The resolved run configuration, written to stderr. The only place a
  // timestamp appears.
  void header(const std::string& subcommand, const nlohmann::json& resolved) const {
    if (quiet) return;
    nlohmann::json h = {{"tool", "measqc"},
                        {"version", kVersion},
                        {"subcommand", subcommand},
                        {"started", utc_now()},
                        {"config", resolved}};
    err << "# " << h.dump() << '\n';
  }
  void note(const std::string& s) const {
    if (!quiet) err << s << '\n';
  }
};

inline RewardConfig load_reward_config(const std::string& path) {
  if (path.empty()) return {};
  return RewardConfig::parse(read_file(path));
}

// --- subcommands ----------------------------------------------------------

struct ParseOpts {
  std::vector<std::string> inputs;
  std::string out;
  std::size_t jobs = 1;
};

inline int cmd_parse(const ParseOpts& o, const Context& ctx) {
  ctx.header("parse", {{"inputs", o.inputs}, {"jobs", o.jobs}});
  std::vector<std::string> texts(o.inputs.size());
  for (std::size_t i = 0; i < o.inputs.size(); ++i) texts[i] = read_file(o.inputs[i]);
  std::vector<std::string> chunks(o.inputs.size());
  run_bounded(o.inputs.size(), o.jobs, [&](std::size_t i) {
    const std::string doc_id = std::filesystem::path(o.inputs[i]).stem().string();
    for (const auto& q : extract_quantities(texts[i])) chunks[i] += bindings::quantity_record(doc_id, q).dump() + "\n";
  });
  std::string all;
  for (const auto& c : chunks) all += c;
  write_output(o.out, all, ctx.out);
  return kOk;
}

struct ScoreOpts {
  std::string pred;
  std::string gold;
  std::string docs;
  std::string criterion = "relaxed";
  std::string averaging = "macro";
  std::string out;
  bool table = false;
};

inline int cmd_score(const ScoreOpts& o, const Context& ctx) {
  const auto criterion = criterion_from_string(o.criterion);
  Averaging averaging;
  if (o.averaging == "macro") {
    averaging = Averaging::Macro;
  } else if (o.averaging == "micro") {
    averaging = Averaging::Micro;
  } else {
    throw ConfigError("unknown averaging '" + o.averaging + "'");
  }
  ctx.header("score", {{"pred", o.pred}, {"gold", o.gold}, {"docs", o.docs}, {"criterion", to_string(criterion)},
                       {"averaging", to_string(averaging)}});
  std::optional<std::map<std::string, Document>> docs;
  if (!o.docs.empty()) docs = load_docs(o.docs);
  const Corpus gold = load_corpus(o.gold, docs ? &*docs : nullptr);
  const Corpus pred = load_corpus(o.pred, docs ? &*docs : nullptr);
  const auto report = score_report(pred, gold, criterion, averaging);
  if (o.table) {
    write_output(o.out, format_table(report), ctx.out);
    return kOk;
  }
  write_output(o.out, bindings::score_record(report).dump(2) + "\n", ctx.out);
  return kOk;
}

struct RewardOpts {
  std::string generations;
  std::string gold;
  std::string docs;
  std::string config;
  std::string out;
  std::size_t jobs = 1;
};

struct Generation {
  std::string id;
  std::string doc_id;
  std::string text;
};

inline std::vector<Generation> load_generations(const std::string& path) {
  std::vector<Generation> out;
  std::size_t n = 0;
  for (const auto& j : read_jsonl(path)) {
    ++n;
    Generation g;
    g.doc_id = string_field(j, "doc_id", n);
    g.text = string_field(j, "generation", n);
    g.id = j.contains("id") ? (j["id"].is_string() ? j["id"].get<std::string>() : j["id"].dump()) : std::to_string(n);
    out.push_back(std::move(g));
  }
  return out;
}

inline void require_known_docs(const std::vector<Generation>& gens, const Corpus& gold,
                               const std::map<std::string, Document>* docs) {
  std::vector<std::string> unknown;
  for (const auto& g : gens) {
    const bool known = gold.annotations.count(g.doc_id) || gold.documents.count(g.doc_id) ||
                       (docs && docs->count(g.doc_id));
    if (!known) unknown.push_back(g.doc_id);
  }
  if (!unknown.empty()) throw ValidationError("generations for documents absent from gold", unknown);
}

inline int cmd_reward_quantity(const RewardOpts& o, const Context& ctx) {
  const auto cfg = load_reward_config(o.config);
  ctx.header("reward-quantity", {{"generations", o.generations}, {"gold", o.gold}, {"docs", o.docs},
                                 {"reward", cfg.to_json()}, {"config_hash", cfg.hash()}, {"jobs", o.jobs}});
  std::optional<std::map<std::string, Document>> docs;
  if (!o.docs.empty()) docs = load_docs(o.docs);
  const Corpus gold = load_corpus(o.gold, docs ? &*docs : nullptr);
  const auto gens = load_generations(o.generations);
  require_known_docs(gens, gold, docs ? &*docs : nullptr);
  std::vector<std::string> lines(gens.size());
  const std::string hash = cfg.hash();
  run_bounded(gens.size(), o.jobs, [&](std::size_t i) {
    const auto b = total_reward(gens[i].text, gold.of(gens[i].doc_id), cfg.quantity);
    lines[i] = bindings::reward_record(gens[i].id, gens[i].doc_id, b, "quantity", hash).dump() + "\n";
  });
  std::string all;
  for (const auto& l : lines) all += l;
  write_output(o.out, all, ctx.out);
  return kOk;
}

inline int cmd_reward_relation(const RewardOpts& o, const Context& ctx) {
  if (o.docs.empty()) throw ConfigError("reward-relation needs --docs for evidence grounding");
  const auto cfg = load_reward_config(o.config);
  ctx.header("reward-relation", {{"generations", o.generations}, {"gold", o.gold}, {"docs", o.docs},
                                 {"reward", cfg.to_json()}, {"config_hash", cfg.hash()}, {"jobs", o.jobs}});
  const auto docs = load_docs(o.docs);
  const Corpus gold = load_corpus(o.gold, &docs);
  const auto gens = load_generations(o.generations);
  std::vector<std::string> missing;
  for (const auto& g : gens) {
    if (!docs.count(g.doc_id)) missing.push_back(g.doc_id);
  }
  if (!missing.empty()) throw ValidationError("generations for documents absent from --docs", missing);
  std::map<std::string, std::vector<MeasurementGroup>> groups;
  for (const auto& g : gens) {
    if (!groups.count(g.doc_id)) groups[g.doc_id] = assemble_groups(gold.of(g.doc_id)).groups;
  }
  std::vector<std::string> lines(gens.size());
  const std::string hash = cfg.hash();
  run_bounded(gens.size(), o.jobs, [&](std::size_t i) {
    const auto b = total_reward_rel(gens[i].text, docs.at(gens[i].doc_id), groups.at(gens[i].doc_id), cfg.relation);
    lines[i] = bindings::reward_record(gens[i].id, gens[i].doc_id, b, "relation", hash).dump() + "\n";
  });
  std::string all;
  for (const auto& l : lines) all += l;
  write_output(o.out, all, ctx.out);
  return kOk;
}

struct EntropyOpts {
  std::string traces;
  double tau = 1.0;
  std::string sigma_over = "tokens";
  std::string out;
  std::string dump_tokens;
};

inline int cmd_entropy(const EntropyOpts& o, const Context& ctx) {
  SigmaOver sigma;
  if (o.sigma_over == "tokens") {
    sigma = SigmaOver::Tokens;
  } else if (o.sigma_over == "brackets") {
    sigma = SigmaOver::Brackets;
  } else {
    throw ConfigError("unknown --sigma-over '" + o.sigma_over + "'");
  }
  if (!(o.tau > 0.0)) throw ConfigError("tau must be > 0");
  nlohmann::json protocol = {{"tau", o.tau}, {"sigma_over", o.sigma_over}};
  protocol["config_hash"] = fnv1a_hex(protocol.dump());
  ctx.header("entropy", {{"traces", o.traces}, {"tau", o.tau}, {"sigma_over", o.sigma_over},
                         {"dump_tokens", o.dump_tokens}});
  std::vector<TokenTrace> samples;
  for (const auto& j : read_jsonl(o.traces)) samples.push_back(trace_from_json(j));
  const auto report = compute_stats(samples, o.tau, sigma);
  if (!o.dump_tokens.empty()) {
    std::string dump;
    for (const auto& s : samples) {
      for (std::size_t i = 0; i < s.tokens.size(); ++i) {
        dump += nlohmann::json{{"sample_id", s.sample_id},
                               {"index", i},
                               {"token", s.tokens[i].token},
                               {"entropy", s.tokens[i].bits()}}
                    .dump() +
                "\n";
      }
    }
    write_output(o.dump_tokens, dump, ctx.out);
  }
  nlohmann::json j = {{"protocol", protocol}, {"report", to_json(report)}};
  write_output(o.out, j.dump(2) + "\n", ctx.out);
  return kOk;
}

struct DatasetOpts {
  std::string input;
  std::string gold;
  std::string template_path;
  std::string out;
  std::string summary;
  std::string client = "auto";
  std::uint64_t seed = 0;
  double temperature = 0.0;
  int max_tokens = 2048;
  std::size_t max_in_flight = 4;
  double mock_fail_rate = 0.0;
  double mock_corrupt_rate = 0.0;
};

inline std::unique_ptr<GenerationClient> make_client(const DatasetOpts& o, std::string* resolved) {
  std::string kind = o.client;
  if (kind == "auto") {
    const char* ep = std::getenv("GEN_ENDPOINT");
    kind = ep && *ep ? "http" : "mock";
  }
  *resolved = kind;
  if (kind == "mock") return std::make_unique<MockClient>(MockClient::Options{o.mock_fail_rate, o.mock_corrupt_rate});
  if (kind == "http") return std::make_unique<HttpClient>(HttpClient::from_env());
  throw ConfigError("unknown --client '" + o.client + "'");
}

inline nlohmann::json dataset_config(const std::string& mode, const DatasetOpts& o, const std::string& client) {
  nlohmann::json j = {{"mode", mode},
                      {"input", o.input},
                      {"gold", o.gold},
                      {"template", o.template_path.empty() ? "builtin" : o.template_path},
                      {"client", client},
                      {"seed", o.seed},
                      {"temperature", o.temperature},
                      {"max_tokens", o.max_tokens},
                      {"max_in_flight", o.max_in_flight}};
  if (client == "mock") {
    j["mock_fail_rate"] = o.mock_fail_rate;
    j["mock_corrupt_rate"] = o.mock_corrupt_rate;
  } else if (client == "http") {
    const char* ep = std::getenv("GEN_ENDPOINT");
    j["endpoint"] = ep ? ep : "";
  }
  return j;
}

inline void check_rates(const DatasetOpts& o) {
  for (double r : {o.mock_fail_rate, o.mock_corrupt_rate}) {
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("mock rates must lie in [0, 1]");
  }
}

template <typename Example>
int finish_dataset(const DatasetOpts& o, const Context& ctx, const std::vector<Example>& xs) {
  std::string all;
  for (const auto& x : xs) all += to_json(x).dump() + "\n";
  write_output(o.out, all, ctx.out);
  const auto counts = count_statuses(xs);
  const std::string summary = to_json(counts).dump();
  if (!o.summary.empty()) write_output(o.summary, summary + "\n", ctx.out);
  ctx.note("# summary " + summary);
  for (const auto& x : xs) {
    if (x.status == ExampleStatus::Rejected || x.status == ExampleStatus::Failed) {
      ctx.note("# " + std::string(to_string(x.status)) + " " + x.doc_id + ": " + x.reason);
    }
  }
  return kOk;
}

inline int cmd_dataset(const std::string& mode, const DatasetOpts& o, const Context& ctx) {
  check_rates(o);
  const TemplateId tid = mode == "build-aug" ? TemplateId::Aug : TemplateId::Trace;
  PipelineOptions popts;
  popts.params = {o.temperature, o.max_tokens, o.seed};
  popts.max_in_flight = o.max_in_flight;
  if (o.max_in_flight == 0) throw ConfigError("--max-in-flight must be >= 1");

  if (mode == "validate") {
    if (o.gold.empty()) throw ConfigError("dataset validate needs --gold");
    ctx.header("dataset", dataset_config(mode, o, "none"));
    std::vector<TraceExample> xs;
    std::map<std::string, Document> docs;
    std::size_t n = 0;
    const auto records = read_jsonl(o.input);
    for (const auto& j : records) {
      ++n;
      TraceExample ex;
      ex.doc_id = string_field(j, "doc_id", n);
      ex.text = string_field(j, "text", n);
      ex.trajectory = string_field(j, "trajectory", n);
      docs.emplace(ex.doc_id, Document{ex.doc_id, ex.text});
      xs.push_back(std::move(ex));
    }
    const Corpus gold = load_corpus(o.gold, &docs);
    run_bounded(xs.size(), o.max_in_flight, [&](std::size_t i) {
      xs[i].gold = gold.of(xs[i].doc_id);
      const auto v = validate_trace(xs[i]);
      xs[i].status = v.accepted ? ExampleStatus::Accepted : ExampleStatus::Rejected;
      xs[i].reason = v.reason;
    });
    return finish_dataset(o, ctx, xs);
  }

  const PromptTemplate tpl =
      o.template_path.empty() ? PromptTemplate::builtin(tid) : PromptTemplate::from_file(tid, o.template_path);
  std::string client_kind;
  auto client = make_client(o, &client_kind);
  ctx.header("dataset", dataset_config(mode, o, client_kind));
  std::istringstream in(read_file(o.input));
  const auto docs = load_documents_jsonl(in);
  if (mode == "build-aug") return finish_dataset(o, ctx, build_aug_candidates(docs, *client, tpl, popts));

  if (o.gold.empty()) throw ConfigError("dataset build-trace needs --gold");
  std::map<std::string, Document> by_id;
  for (const auto& d : docs) by_id.emplace(d.doc_id, d);
  const Corpus gold = load_corpus(o.gold, &by_id);
  std::vector<TraceInput> inputs;
  for (const auto& d : docs) inputs.push_back({d, gold.of(d.doc_id)});
  return finish_dataset(o, ctx, build_trace_examples(inputs, *client, tpl, popts));
}

// --- entry point ----------------------------------------------------------

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"measqc: quantity extraction scoring, rewards and trace analysis"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "Suppress the reproducibility header and notes on stderr");

  ParseOpts parse_o;
  auto* parse = app.add_subcommand("parse", "Extract quantities from text files as JSONL");
  parse->add_option("inputs", parse_o.inputs, "UTF-8 text files; the file stem is the doc_id")->required();
  parse->add_option("-o,--out", parse_o.out, "Output path (default stdout)");
  parse->add_option("-j,--jobs", parse_o.jobs, "Parallel documents")->check(CLI::PositiveNumber);

  ScoreOpts score_o;
  auto* score = app.add_subcommand("score", "Score predicted annotations against gold");
  score->add_option("--pred", score_o.pred, "Predicted annotations, MeasEval TSV")->required();
  score->add_option("--gold", score_o.gold, "Gold annotations, MeasEval TSV")->required();
  score->add_option("--docs", score_o.docs, "Documents (TSV, JSONL or directory) for span checks");
  score->add_option("--criterion", score_o.criterion, "strict, relaxed or overlap")->capture_default_str();
  score->add_option("--averaging", score_o.averaging, "macro or micro")->capture_default_str();
  score->add_flag("--table", score_o.table, "Print a text table instead of JSON");
  score->add_option("-o,--out", score_o.out, "Output path (default stdout)");

  RewardOpts rq_o;
  auto* rq = app.add_subcommand("reward-quantity", "Quantity-phase reward breakdown per generation");
  RewardOpts rr_o;
  auto* rr = app.add_subcommand("reward-relation", "Relation-phase reward breakdown per generation");
  for (auto [cmd, o] : {std::pair{rq, &rq_o}, std::pair{rr, &rr_o}}) {
    cmd->add_option("--generations", o->generations, "JSONL of {id?, doc_id, generation}")->required();
    cmd->add_option("--gold", o->gold, "Gold annotations, MeasEval TSV")->required();
    cmd->add_option("--docs", o->docs, "Documents (TSV, JSONL or directory)");
    cmd->add_option("--config", o->config, "Reward config JSON");
    cmd->add_option("-o,--out", o->out, "Output path (default stdout)");
    cmd->add_option("-j,--jobs", o->jobs, "Parallel records")->check(CLI::PositiveNumber);
  }

  EntropyOpts ent_o;
  auto* ent = app.add_subcommand("entropy", "Bracket-token entropy statistics");
  ent->add_option("--traces", ent_o.traces, "JSONL token traces")->required();
  ent->add_option("--tau", ent_o.tau, "Spike threshold in bits")->capture_default_str();
  ent->add_option("--sigma-over", ent_o.sigma_over, "tokens or brackets")->capture_default_str();
  ent->add_option("--dump-tokens", ent_o.dump_tokens, "Write per-token entropies as JSONL");
  ent->add_option("-o,--out", ent_o.out, "Output path (default stdout)");

  auto* ds = app.add_subcommand("dataset", "Build or filter fine-tuning corpora");
  ds->require_subcommand(1);
  std::map<std::string, DatasetOpts> ds_o;
  for (const char* mode : {"build-aug", "build-trace", "validate"}) ds_o[mode];
  auto add_common = [](CLI::App* c, DatasetOpts& o) {
    c->add_option("--input", o.input, "JSONL input")->required();
    c->add_option("-o,--out", o.out, "Output JSONL (default stdout)");
    c->add_option("--summary", o.summary, "Write status counts as JSON");
    c->add_option("--max-in-flight", o.max_in_flight, "Concurrent requests or validations")->capture_default_str();
  };
  auto add_gen = [](CLI::App* c, DatasetOpts& o) {
    c->add_option("--template", o.template_path, "Prompt template file (default built in)");
    c->add_option("--seed", o.seed, "Generation seed")->capture_default_str();
    c->add_option("--temperature", o.temperature, "Sampling temperature")->capture_default_str();
    c->add_option("--max-tokens", o.max_tokens, "Generation length cap")->capture_default_str();
    c->add_option("--client", o.client, "auto, mock or http; auto picks http when GEN_ENDPOINT is set")
        ->capture_default_str();
    c->add_option("--mock-fail-rate", o.mock_fail_rate, "Mock: share of requests that fail");
    c->add_option("--mock-corrupt-rate", o.mock_corrupt_rate, "Mock: share of damaged answers");
  };
  auto* aug = ds->add_subcommand("build-aug", "Anchor-guided trajectories from raw texts ({doc_id, text})");
  add_common(aug, ds_o["build-aug"]);
  add_gen(aug, ds_o["build-aug"]);
  auto* tr = ds->add_subcommand("build-trace", "Gold-guided trajectories kept when consistent");
  add_common(tr, ds_o["build-trace"]);
  add_gen(tr, ds_o["build-trace"]);
  tr->add_option("--gold", ds_o["build-trace"].gold, "Gold annotations, MeasEval TSV")->required();
  auto* val = ds->add_subcommand("validate", "Check {doc_id, text, trajectory} records against gold");
  add_common(val, ds_o["validate"]);
  val->add_option("--gold", ds_o["validate"].gold, "Gold annotations, MeasEval TSV")->required();

  std::vector<const char*> argv;
  argv.push_back("measqc");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; anything else is a usage error.
    std::ostringstream usage;
    const int code = app.exit(e, out, usage);
    if (code == 0) return kOk;
    err << "measqc: " << e.what() << '\n';
    return kConfig;
  }

  Context ctx{out, err, quiet};
  try {
    if (*parse) return cmd_parse(parse_o, ctx);
    if (*score) return cmd_score(score_o, ctx);
    if (*rq) return cmd_reward_quantity(rq_o, ctx);
    if (*rr) return cmd_reward_relation(rr_o, ctx);
    if (*ent) return cmd_entropy(ent_o, ctx);
    for (auto* c : {aug, tr, val}) {
      if (*c) return cmd_dataset(c->get_name(), ds_o[c->get_name()], ctx);
    }
  } catch (const IoError& e) {
    err << "measqc: " << e.what() << '\n';
    return kIo;
  } catch (const ConfigError& e) {
    err << "measqc: " << e.what() << '\n';
    return kConfig;
  } catch (const ParseError& e) {
    err << "measqc: " << e.what() << '\n';
    return kValidation;
  } catch (const ValidationError& e) {
    err << "measqc: " << e.what() << '\n';
    return kValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "measqc: " << e.what() << '\n';
    return kValidation;
  } catch (const Error& e) {
    err << "measqc: " << e.what() << '\n';
    return kValidation;
  }
  return kConfig;
}

}  // namespace measqc::cli
