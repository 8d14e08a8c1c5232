// Copyright 2026 The modalbench Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "modalbench/cli/cli.h"

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

// Eigen (via analysis.h) must precede httplib-dependent headers: <resolv.h> defines _res.
#include "modalbench/analysis/analysis.h"
#include "CLI11.hpp"
#include "json.hpp"
#include "modalbench/eval/client.h"
#include "modalbench/eval/run.h"
#include "modalbench/prover/prover.h"
#include "modalbench/study/server.h"
#include "modalbench/synthesis/dataset.h"

namespace modalbench {

namespace {

// A failure with a short category for the error line.
struct CliError : std::runtime_error {
  CliError(std::string kind, const std::string& message) : std::runtime_error(message), kind(std::move(kind)) {}
  std::string kind;
};

std::vector<std::string> SplitComma(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string part; std::getline(in, part, ',');) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

void RequireFile(const std::string& path) {
  if (!std::ifstream(path)) throw CliError("missing_file", "cannot read " + path);
}

struct GenerateArgs {
  std::string families = "main24";
  int n = 1000;
  std::uint64_t seed = 42;
  std::string lexicon = "natural";
  std::string lexicon_file;
  std::string out;
};

int Generate(const GenerateArgs& a, std::ostream& out) {
  std::vector<Family> families;
  std::vector<std::string> family_names;
  for (const auto& name : SplitComma(a.families)) {
    families.push_back(ParseFamily(name));
    family_names.push_back(name);
  }
  if (families.empty()) throw CliError("usage", "--families is empty");
  if (a.n <= 0) throw CliError("usage", "--n must be positive");
  const LexiconKind kind = ParseLexiconKind(a.lexicon);
  Lexicon lex;
  if (!a.lexicon_file.empty()) {
    RequireFile(a.lexicon_file);
    lex = LoadLexicon(a.lexicon_file);
  } else if (kind == LexiconKind::kNatural) {
    lex = NaturalLexicon();
  } else {
    lex = MakeNonsenseLexicon(static_cast<int>(NaturalLexicon().names.size()),
                              static_cast<int>(NaturalLexicon().verb_phrases.size()), a.seed);
  }
  const auto items = BuildDataset(SelectFamilies(BuiltinCatalog(), families), SampleInterpretations(lex, a.n, a.seed), kind);
  WriteDataset(items, a.out);
  WriteDatasetMeta({a.seed, a.n, kind, lex.version, family_names, items.size()}, a.out);
  std::size_t yes = 0;
  for (const auto& it : items) yes += it.ground_truth == Answer::kYes;
  out << nlohmann::json{{"items", items.size()}, {"yes", yes}, {"seed", a.seed}, {"out", a.out}}.dump() << "\n";
  return 0;
}

int Prove(const std::string& text, const std::string& mode, const std::string& frames, bool oracle, std::ostream& out) {
  const Sequent s = ParseSequent(text, ParseConsequenceMode(mode), ParseFrameClass(frames));
  const Verdict v = Decide(s);
  out << (v.valid ? "valid" : "invalid") << "\n";
  if (v.countermodel) out << FormatModel(*v.countermodel) << "\n";
  if (oracle) {
    const Verdict b = BruteForceOracle(s);
    out << "oracle: " << (b.valid ? "valid" : "invalid") << (b.valid == v.valid ? "" : " (DISAGREES)") << "\n";
    if (b.valid != v.valid) return 3;
  }
  return 0;
}

int Audit(const std::string& csv_path, std::ostream& out) {
  const auto rows = AuditCatalog(BuiltinCatalog());
  std::size_t matches = 0;
  std::vector<std::string> divergent;
  std::ofstream csv;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) throw CliError("io", "cannot write " + csv_path);
    csv << "id,sequent,mode,frames,reference,prover,matches,stable\n";
  }
  for (const auto& r : rows) {
    matches += r.matches;
    if (!r.matches) divergent.push_back(r.id);
    out << (r.matches ? "match    " : "DIVERGES ") << r.id << "  " << r.sequent << "  [" << ConsequenceModeName(r.mode)
        << "," << FrameClassName(r.frames) << "]  reference=" << AnswerName(r.reference_label)
        << " prover=" << AnswerName(r.prover_label) << (r.stable ? "" : " (unstable across K/T/global)") << "\n";
    if (!r.matches && !r.countermodel.empty()) out << "  countermodel: " << r.countermodel << "\n";
    if (csv) {
      csv << r.id << ",\"" << r.sequent << "\"," << ConsequenceModeName(r.mode) << "," << FrameClassName(r.frames)
          << "," << AnswerName(r.reference_label) << "," << AnswerName(r.prover_label) << "," << r.matches << ","
          << r.stable << "\n";
    }
  }
  out << rows.size() << " rows, " << matches << " match, " << divergent.size() << " divergent";
  for (const auto& d : divergent) out << " " << d;
  out << "\n";
  return 0;
}

struct EvalArgs {
  std::string dataset;
  std::string out;
  std::string endpoint;
  std::string api_style = "native";
  std::string api_key_env = "MODALBENCH_API_KEY";
  std::string model;
  std::string cache;
  std::string offline;
  std::string mock;
  std::string yes_variants = " Yes";
  std::string no_variants = " No";
  int concurrency = 1;
};

int Eval(const EvalArgs& a, std::ostream& out) {
  RequireFile(a.dataset);
  const int sources = !a.endpoint.empty() + !a.offline.empty() + !a.mock.empty();
  if (sources != 1) throw CliError("usage", "give exactly one of --endpoint, --offline, --mock");
  std::unique_ptr<ScoringClient> client;
  std::string model = a.model;
  if (!a.offline.empty()) {
    RequireFile(a.offline);
    client = std::make_unique<OfflineClient>(a.offline);
    if (model.empty()) model = "offline";
  } else if (a.mock == "uniform") {
    client = std::make_unique<UniformMockClient>();
    if (model.empty()) model = "mock-uniform";
  } else if (a.mock == "oracle") {
    client = std::make_unique<OracleMockClient>();
    if (model.empty()) model = "mock-oracle";
  } else if (!a.mock.empty()) {
    throw CliError("usage", "--mock must be uniform or oracle");
  } else {
    if (model.empty()) throw CliError("usage", "--endpoint needs --model");
    HttpOptions http;
    http.base_url = a.endpoint;
    if (a.api_style == "openai") {
      http.style = ApiStyle::kOpenAiCompletions;
    } else if (a.api_style != "native") {
      throw CliError("usage", "--api-style must be native or openai");
    }
    if (const char* key = std::getenv(a.api_key_env.c_str())) http.api_key = key;
    std::shared_ptr<ScoringBackend> backend = std::make_shared<HttpBackend>(http);
    if (!a.cache.empty()) backend = std::make_shared<CachingBackend>(backend, a.cache);
    CandidateSet candidates{SplitComma(a.yes_variants), SplitComma(a.no_variants)};
    client = std::make_unique<EndpointClient>(backend, model, candidates);
  }
  const EvalSummary s = RunEvaluation(ReadDataset(a.dataset), *client, a.out, {model, a.concurrency});
  nlohmann::json j{{"model", s.model},       {"items", s.items},       {"completed", s.completed},
                   {"resumed", s.resumed},   {"acc_soft", s.acc_soft}, {"greedy_accuracy", s.greedy_accuracy},
                   {"failures", s.failures.size()}, {"out", a.out}};
  if (s.mean_perplexity) j["mean_perplexity"] = *s.mean_perplexity;
  out << j.dump() << "\n";
  if (!s.failures.empty()) {
    throw CliError("eval_failures", std::to_string(s.failures.size()) + " items failed; see " + a.out +
                                        ".failures.json and rerun to resume");
  }
  return 0;
}

int Analyze(const std::vector<std::string>& results, const std::string& human, const std::string& dir,
            bool per_form_means, std::ostream& out) {
  std::vector<Observation> obs;
  for (const auto& path : results) {
    RequireFile(path);
    const auto part = ObservationsFromRun(ReadResults(path));
    obs.insert(obs.end(), part.begin(), part.end());
  }
  std::vector<HumanObservation> trials;
  if (!human.empty()) {
    RequireFile(human);
    trials = LoadHumanTrials(human);
  }
  if (obs.empty() && trials.empty()) throw CliError("usage", "nothing to analyze; pass --results and/or --human");
  FitOptions opts;
  opts.per_form_means = per_form_means;
  for (const auto& f : WriteReports(dir, obs, trials, opts)) out << dir << "/" << f << "\n";
  return 0;
}

struct ServeArgs {
  std::string dataset;
  std::string log = "study_log.jsonl";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t items_per_session = 24;
  std::uint64_t seed = 42;
  std::string static_dir;
};

int Serve(const ServeArgs& a, std::ostream& out) {
  RequireFile(a.dataset);
  StudyStore store(ReadDataset(a.dataset), {a.items_per_session, a.seed, a.log});
  StudyServer server(store, a.static_dir);
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  const int port = server.Bind(a.host, a.port);
  out << "listening on http://" << a.host << ":" << port << std::endl;
  std::thread listener([&] { server.Listen(); });
  int sig = 0;
  sigwait(&signals, &sig);
  server.Stop();
  listener.join();
  return 0;
}

void PrintError(std::ostream& err, const std::string& kind, const std::string& message) {
  std::string flat = message;
  for (char& c : flat) {
    if (c == '\n') c = ' ';
  }
  err << nlohmann::json{{"error", kind}, {"message", flat}}.dump() << "\n";
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"modalbench: modal-logic syllogism benchmark workbench"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1, 1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "emit a question dataset as JSONL (plus <out>.meta.json)");
  generate->add_option("--families", gen.families, "comma list of main24,necessitation,distribution");
  generate->add_option("--n", gen.n, "interpretations per form");
  generate->add_option("--seed", gen.seed, "sampling seed");
  generate->add_option("--lexicon", gen.lexicon, "natural or nonsense");
  generate->add_option("--lexicon-file", gen.lexicon_file, "custom lexicon JSON (overrides the built-in one)");
  generate->add_option("--out", gen.out, "output JSONL path")->required();

  std::string sequent, mode = "local", frames = "t";
  bool oracle = false;
  auto* prove = app.add_subcommand("prove", "decide one sequent, e.g. \"p|q; ~p |- q\"");
  prove->add_option("sequent", sequent, "premises separated by ';', then '|-' and the conclusion")->required();
  prove->add_option("--mode", mode, "local or global consequence");
  prove->add_option("--frames", frames, "k or t");
  prove->add_flag("--oracle", oracle, "cross-check with the finite-model oracle");

  std::string audit_csv;
  auto* audit = app.add_subcommand("audit-catalog", "compare prover verdicts with the catalog's reference labels");
  audit->add_option("--csv", audit_csv, "also write the report as CSV");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "score a dataset and write per-item results JSONL");
  eval->add_option("--dataset", ev.dataset, "dataset JSONL")->required();
  eval->add_option("--out", ev.out, "results JSONL (resumed if present)")->required();
  eval->add_option("--endpoint", ev.endpoint, "base URL of a logprob scoring server");
  eval->add_option("--api-style", ev.api_style, "native (/score) or openai (/v1/completions)");
  eval->add_option("--api-key-env", ev.api_key_env, "environment variable holding the bearer token");
  eval->add_option("--model", ev.model, "model name sent to the endpoint and stored in results");
  eval->add_option("--cache", ev.cache, "JSONL response cache");
  eval->add_option("--yes-variants", ev.yes_variants, "comma list of Yes continuations");
  eval->add_option("--no-variants", ev.no_variants, "comma list of No continuations");
  eval->add_option("--offline", ev.offline, "precomputed logprob JSONL");
  eval->add_option("--mock", ev.mock, "uniform or oracle");
  eval->add_option("--concurrency", ev.concurrency, "parallel requests")->check(CLI::PositiveNumber);

  std::vector<std::string> results;
  std::string human, report_dir;
  bool per_form = false;
  auto* analyze = app.add_subcommand("analyze", "write report CSVs from results and study exports");
  analyze->add_option("--results", results, "results JSONL (repeatable)");
  analyze->add_option("--human", human, "study export JSONL");
  analyze->add_option("--out", report_dir, "report directory")->required();
  analyze->add_flag("--per-form-means", per_form, "fit on per-form means instead of items");

  ServeArgs sv;
  auto* serve = app.add_subcommand("serve", "run the human study HTTP service");
  serve->add_option("--dataset", sv.dataset, "dataset JSONL (main24 items are used)")->required();
  serve->add_option("--log", sv.log, "write-ahead log / trial store");
  serve->add_option("--host", sv.host, "bind address");
  serve->add_option("--port", sv.port, "port (0 picks a free one)");
  serve->add_option("--items-per-session", sv.items_per_session, "trials per participant");
  serve->add_option("--seed", sv.seed, "item-order seed");
  serve->add_option("--static", sv.static_dir, "directory served at / (participant UI)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    // Subcommand help requests arrive as CallForHelp from the subcommand.
    PrintError(err, "usage", e.what());
    return 2;
  }

  try {
    if (*generate) return Generate(gen, out);
    if (*prove) return Prove(sequent, mode, frames, oracle, out);
    if (*audit) return Audit(audit_csv, out);
    if (*eval) return Eval(ev, out);
    if (*analyze) return Analyze(results, human, report_dir, per_form, out);
    if (*serve) return Serve(sv, out);
  } catch (const CliError& e) {
    PrintError(err, e.kind, e.what());
    return 1;
  } catch (const SyntaxError& e) {
    PrintError(err, "syntax", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    PrintError(err, "invalid_argument", e.what());
    return 1;
  } catch (const std::exception& e) {
    PrintError(err, "runtime", e.what());
    return 1;
  }
  return 2;
}

}  // namespace modalbench
