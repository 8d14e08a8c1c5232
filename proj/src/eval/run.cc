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

#include "modalbench/eval/run.h"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "json.hpp"

namespace modalbench {

namespace {

using Json = nlohmann::ordered_json;

Json Logps(const std::vector<double>& xs) {
  Json out = Json::array();
  for (double x : xs) {
    if (std::isfinite(x)) {
      out.push_back(x);
    } else {
      out.push_back(nullptr);
    }
  }
  return out;
}

Json AggregateJson(const EvalSummary& s) {
  Json j;
  j["aggregate"] = true;
  j["model"] = s.model;
  j["items"] = s.completed;
  j["acc_soft"] = s.acc_soft;
  j["greedy_accuracy"] = s.greedy_accuracy;
  j["mean_perplexity"] = s.mean_perplexity ? Json(*s.mean_perplexity) : Json(nullptr);
  return j;
}

void Summarize(const std::vector<ModelResponse>& responses, EvalSummary* s) {
  s->completed = responses.size();
  double soft = 0, greedy = 0, ppl = 0;
  std::size_t ppl_n = 0;
  for (const auto& r : responses) {
    soft += r.soft_score;
    greedy += r.greedy_label == r.ground_truth;
    if (r.perplexity) {
      ppl += *r.perplexity;
      ++ppl_n;
    }
  }
  const double n = responses.empty() ? 1.0 : static_cast<double>(responses.size());
  s->acc_soft = soft / n;
  s->greedy_accuracy = greedy / n;
  if (ppl_n > 0) s->mean_perplexity = ppl / static_cast<double>(ppl_n);
}

}  // namespace

ModelResponse MakeResponse(const std::string& model, const QuestionItem& item, const AnswerLogprobs& a) {
  ModelResponse r;
  r.model = model;
  r.item_id = item.item_id;
  r.form_id = item.form_id;
  r.family = item.family;
  r.modality = item.modality;
  r.arg_form = item.arg_form;
  r.ground_truth = item.ground_truth;
  r.lexicon_kind = item.lexicon_kind;
  r.answer = a;
  r.soft_score = SoftAccuracy(a, item.ground_truth);
  r.greedy_label = GreedyLabel(a);
  if (!a.prompt_token_logps.empty()) r.perplexity = PromptPerplexity(a.prompt_token_logps);
  return r;
}

std::string ResponseToJsonLine(const ModelResponse& r) {
  Json j;
  j["model"] = r.model;
  j["item_id"] = r.item_id;
  j["form_id"] = r.form_id;
  j["family"] = FamilyName(r.family);
  j["modality"] = ModalityName(r.modality);
  j["arg_form"] = ArgFormName(r.arg_form);
  j["ground_truth"] = AnswerName(r.ground_truth);
  j["lexicon_kind"] = LexiconKindName(r.lexicon_kind);
  j["logp_yes"] = std::isfinite(r.answer.logp_yes) ? Json(r.answer.logp_yes) : Json(nullptr);
  j["logp_no"] = std::isfinite(r.answer.logp_no) ? Json(r.answer.logp_no) : Json(nullptr);
  j["prompt_token_logps"] = Logps(r.answer.prompt_token_logps);
  j["soft_score"] = r.soft_score;
  j["greedy_label"] = AnswerName(r.greedy_label);
  j["perplexity"] = r.perplexity ? Json(*r.perplexity) : Json(nullptr);
  return j.dump();
}

ModelResponse ResponseFromJsonLine(std::string_view line) {
  const double ninf = -std::numeric_limits<double>::infinity();
  try {
    const Json j = Json::parse(line);
    ModelResponse r;
    r.model = j.at("model").get<std::string>();
    r.item_id = j.at("item_id").get<std::string>();
    r.form_id = j.at("form_id").get<std::string>();
    r.family = ParseFamily(j.at("family").get<std::string>());
    r.modality = ParseModality(j.at("modality").get<std::string>());
    r.arg_form = ParseArgForm(j.at("arg_form").get<std::string>());
    r.ground_truth = ParseAnswer(j.at("ground_truth").get<std::string>());
    r.lexicon_kind = ParseLexiconKind(j.at("lexicon_kind").get<std::string>());
    r.answer.logp_yes = j.at("logp_yes").is_null() ? ninf : j["logp_yes"].get<double>();
    r.answer.logp_no = j.at("logp_no").is_null() ? ninf : j["logp_no"].get<double>();
    for (const auto& v : j.at("prompt_token_logps")) r.answer.prompt_token_logps.push_back(v.is_null() ? ninf : v.get<double>());
    r.soft_score = j.at("soft_score").get<double>();
    r.greedy_label = ParseAnswer(j.at("greedy_label").get<std::string>());
    if (!j.at("perplexity").is_null()) r.perplexity = j["perplexity"].get<double>();
    return r;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("bad result record: ") + e.what());
  }
}

EvalRun ReadResults(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open results " + path);
  EvalRun run;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) continue;
    if (j.value("aggregate", false)) {
      EvalSummary s;
      s.model = j.at("model").get<std::string>();
      s.items = s.completed = j.at("items").get<std::size_t>();
      s.acc_soft = j.at("acc_soft").get<double>();
      s.greedy_accuracy = j.at("greedy_accuracy").get<double>();
      if (!j.at("mean_perplexity").is_null()) s.mean_perplexity = j["mean_perplexity"].get<double>();
      run.aggregate = s;
      continue;
    }
    run.responses.push_back(ResponseFromJsonLine(line));
  }
  return run;
}

EvalSummary RunEvaluation(const std::vector<QuestionItem>& items, ScoringClient& client, const std::string& out,
                          const RunOptions& options) {
  EvalSummary summary;
  summary.model = options.model;
  summary.items = items.size();

  std::set<std::string> wanted;
  for (const auto& item : items) {
    if (!wanted.insert(item.item_id).second) throw std::invalid_argument("duplicate item id " + item.item_id);
  }

  std::map<std::string, ModelResponse> done;
  if (std::filesystem::exists(out)) {
    for (auto& r : ReadResults(out).responses) {
      if (r.model != options.model) {
        throw std::invalid_argument(out + " holds results for model '" + r.model + "', not '" + options.model + "'");
      }
      if (wanted.count(r.item_id)) done.emplace(r.item_id, std::move(r));
    }
  }
  summary.resumed = done.size();

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!done.count(items[i].item_id)) todo.push_back(i);
  }

  if (!todo.empty()) {
    // Rewrite the partial file first so a torn line cannot sit in the middle.
    {
      std::ofstream f(out, std::ios::trunc);
      if (!f) throw std::runtime_error("cannot write results " + out);
      for (const auto& item : items) {
        const auto it = done.find(item.item_id);
        if (it != done.end()) f << ResponseToJsonLine(it->second) << '\n';
      }
    }
    std::ofstream append(out, std::ios::app);
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t k; (k = next++) < todo.size();) {
        const QuestionItem& item = items[todo[k]];
        try {
          ModelResponse r = MakeResponse(options.model, item, client.Fetch(item));
          const std::string line = ResponseToJsonLine(r);
          std::lock_guard lock(mu);
          append << line << '\n';
          append.flush();
          done.emplace(item.item_id, std::move(r));
        } catch (const std::exception& e) {
          std::lock_guard lock(mu);
          summary.failures.emplace_back(item.item_id, e.what());
        }
      }
    };
    const int threads = std::max(1, std::min<int>(options.concurrency, static_cast<int>(todo.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
  }

  std::vector<ModelResponse> ordered;
  for (const auto& item : items) {
    const auto it = done.find(item.item_id);
    if (it != done.end()) ordered.push_back(it->second);
  }
  Summarize(ordered, &summary);

  if (!summary.failures.empty()) {
    std::sort(summary.failures.begin(), summary.failures.end());
    Json report = Json::array();
    for (const auto& [id, msg] : summary.failures) report.push_back({{"item_id", id}, {"error", msg}});
    std::ofstream f(out + ".failures.json");
    f << report.dump(1) << '\n';
    return summary;
  }

  const std::string tmp = out + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write results " + tmp);
    for (const auto& r : ordered) f << ResponseToJsonLine(r) << '\n';
    f << AggregateJson(summary).dump() << '\n';
    if (!f) throw std::runtime_error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, out);
  std::filesystem::remove(out + ".failures.json");
  return summary;
}

}  // namespace modalbench
