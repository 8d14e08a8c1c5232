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

#include "modalbench/eval/client.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace modalbench {

namespace {

using Json = nlohmann::json;

std::vector<double> ReadLogps(const Json& j) {
  std::vector<double> out;
  for (const auto& v : j) {
    // JSON has no -inf; null stands for a zero-probability token.
    out.push_back(v.is_null() ? -std::numeric_limits<double>::infinity() : v.get<double>());
  }
  return out;
}

Json WriteLogps(const std::vector<double>& xs) {
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

std::uint64_t Fnv1a(std::uint64_t h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  // Field separator so ("ab","c") and ("a","bc") differ.
  h ^= 0xff;
  h *= 1099511628211ULL;
  return h;
}

}  // namespace

OfflineClient::OfflineClient(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open offline scores " + path);
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    try {
      const Json j = Json::parse(line);
      AnswerLogprobs a;
      a.logp_yes = j.at("logp_yes").get<double>();
      a.logp_no = j.at("logp_no").get<double>();
      if (j.contains("prompt_token_logps")) a.prompt_token_logps = ReadLogps(j["prompt_token_logps"]);
      records_[j.at("item_id").get<std::string>()] = std::move(a);
    } catch (const Json::exception& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

AnswerLogprobs OfflineClient::Fetch(const QuestionItem& item) {
  const auto it = records_.find(item.item_id);
  if (it == records_.end()) throw ClientError("no stored scores for item " + item.item_id, false);
  return it->second;
}

AnswerLogprobs UniformMockClient::Fetch(const QuestionItem& item) {
  AnswerLogprobs a;
  a.logp_yes = a.logp_no = std::log(0.5);
  a.prompt_token_logps.assign(1 + item.prompt.size() / 4, std::log(0.5));
  return a;
}

AnswerLogprobs OracleMockClient::Fetch(const QuestionItem& item) {
  AnswerLogprobs a;
  a.logp_yes = item.ground_truth == Answer::kYes ? 0.0 : -10.0;
  a.logp_no = item.ground_truth == Answer::kNo ? 0.0 : -10.0;
  a.prompt_token_logps.assign(1 + item.prompt.size() / 4, -1.0);
  return a;
}

HttpBackend::HttpBackend(HttpOptions options) : options_(std::move(options)) {
  const auto scheme = options_.base_url.find("://");
  if (scheme == std::string::npos) throw std::invalid_argument("endpoint URL needs a scheme: " + options_.base_url);
  const auto slash = options_.base_url.find('/', scheme + 3);
  origin_ = options_.base_url.substr(0, slash);
  if (slash != std::string::npos) prefix_ = options_.base_url.substr(slash);
  while (!prefix_.empty() && prefix_.back() == '/') prefix_.pop_back();
  if (options_.max_attempts < 1) throw std::invalid_argument("max_attempts must be at least 1");
}

std::string HttpBackend::Post(const std::string& path, const std::string& body) {
  httplib::Client cli(origin_);
  cli.set_connection_timeout(options_.timeout);
  cli.set_read_timeout(options_.timeout);
  cli.set_write_timeout(options_.timeout);
  httplib::Headers headers;
  if (!options_.api_key.empty()) headers.emplace("Authorization", "Bearer " + options_.api_key);
  auto res = cli.Post(prefix_ + path, headers, body, "application/json");
  if (!res) throw ClientError("request to " + origin_ + prefix_ + path + " failed: " + httplib::to_string(res.error()), true);
  if (res->status == 429 || res->status >= 500) {
    throw ClientError("endpoint returned HTTP " + std::to_string(res->status), true);
  }
  if (res->status != 200) {
    throw ClientError("endpoint returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200), false);
  }
  return res->body;
}

ScoringResponse HttpBackend::ScoreOnce(const ScoringRequest& req) {
  ScoringResponse out;
  try {
    if (options_.style == ApiStyle::kNative) {
      const Json body = {{"model", req.model}, {"prompt", req.prompt}, {"candidates", req.candidates},
                         {"echo_prompt", req.echo_prompt}};
      const Json j = Json::parse(Post("/score", body.dump()));
      out.candidate_logprobs = ReadLogps(j.at("candidate_logprobs"));
      if (j.contains("prompt_token_logprobs")) out.prompt_token_logprobs = ReadLogps(j["prompt_token_logprobs"]);
      if (out.candidate_logprobs.size() != req.candidates.size()) {
        throw ClientError("endpoint returned " + std::to_string(out.candidate_logprobs.size()) + " scores for " +
                              std::to_string(req.candidates.size()) + " candidates",
                          false);
      }
      return out;
    }
    // Completions API: echo the prompt plus one candidate, generate nothing,
    // and split the echoed tokens at the prompt boundary.
    for (std::size_t c = 0; c < req.candidates.size(); ++c) {
      const Json body = {{"model", req.model}, {"prompt", req.prompt + req.candidates[c]}, {"echo", true},
                         {"max_tokens", 0}, {"logprobs", 0}, {"temperature", 0}};
      const Json j = Json::parse(Post("/v1/completions", body.dump()));
      const Json& lp = j.at("choices").at(0).at("logprobs");
      const auto& offsets = lp.at("text_offset");
      const auto& tokens = lp.at("tokens");
      const auto& logps = lp.at("token_logprobs");
      double sum = 0;
      bool any = false;
      for (std::size_t t = 0; t < offsets.size(); ++t) {
        const std::size_t begin = offsets[t].get<std::size_t>();
        const std::size_t end = begin + tokens[t].get<std::string>().size();
        if (begin >= req.prompt.size()) {
          if (logps[t].is_null()) throw ClientError("candidate token without a log-probability", false);
          sum += logps[t].get<double>();
          any = true;
        } else if (end > req.prompt.size()) {
          throw ClientError("a token spans the prompt/candidate boundary for candidate '" + req.candidates[c] + "'",
                            false);
        } else if (c == 0 && req.echo_prompt && !logps[t].is_null()) {
          out.prompt_token_logprobs.push_back(logps[t].get<double>());
        }
      }
      if (!any) throw ClientError("candidate '" + req.candidates[c] + "' tokenizes to nothing", false);
      out.candidate_logprobs.push_back(sum);
    }
    return out;
  } catch (const Json::exception& e) {
    throw ClientError(std::string("malformed endpoint response: ") + e.what(), false);
  }
}

ScoringResponse HttpBackend::Score(const ScoringRequest& req) {
  if (req.candidates.empty()) throw std::invalid_argument("no answer candidates");
  for (const auto& c : req.candidates) {
    if (c.empty()) throw std::invalid_argument("empty answer candidate");
  }
  auto delay = options_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return ScoreOnce(req);
    } catch (const ClientError& e) {
      if (!e.transient() || attempt >= options_.max_attempts) {
        throw ClientError(std::string(e.what()) + " (after " + std::to_string(attempt) + " attempt" +
                              (attempt == 1 ? "" : "s") + ")",
                          false);
      }
    }
    std::this_thread::sleep_for(delay);
    delay *= 2;
  }
}

CachingBackend::CachingBackend(std::shared_ptr<ScoringBackend> inner, std::string path)
    : inner_(std::move(inner)), path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    // A torn final line from an interrupted run is dropped.
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("key")) continue;
    ScoringResponse r;
    r.candidate_logprobs = ReadLogps(j["candidate_logprobs"]);
    r.prompt_token_logprobs = ReadLogps(j["prompt_token_logprobs"]);
    cache_[j["key"].get<std::string>()] = std::move(r);
  }
}

std::string CachingBackend::Key(const ScoringRequest& req) {
  std::uint64_t h = 14695981039346656037ULL;
  h = Fnv1a(h, req.model);
  h = Fnv1a(h, req.prompt);
  for (const auto& c : req.candidates) h = Fnv1a(h, c);
  h = Fnv1a(h, req.echo_prompt ? "1" : "0");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ScoringResponse CachingBackend::Score(const ScoringRequest& req) {
  const std::string key = Key(req);
  {
    std::lock_guard lock(mu_);
    const auto it = cache_.find(key);
    if (it != cache_.end()) {
      ++hits_;
      return it->second;
    }
  }
  ScoringResponse r = inner_->Score(req);
  std::lock_guard lock(mu_);
  cache_[key] = r;
  if (!path_.empty()) {
    std::ofstream out(path_, std::ios::app);
    out << Json{{"key", key},
                {"candidate_logprobs", WriteLogps(r.candidate_logprobs)},
                {"prompt_token_logprobs", WriteLogps(r.prompt_token_logprobs)}}
               .dump()
        << '\n';
  }
  return r;
}

AnswerLogprobs FetchAnswerLogprobs(ScoringBackend& backend, const std::string& model, const std::string& prompt,
                                   const CandidateSet& candidates, bool echo_prompt) {
  if (candidates.yes.empty() || candidates.no.empty()) throw std::invalid_argument("answer candidates missing");
  ScoringRequest req{model, prompt, candidates.yes, echo_prompt};
  req.candidates.insert(req.candidates.end(), candidates.no.begin(), candidates.no.end());
  const ScoringResponse r = backend.Score(req);
  if (r.candidate_logprobs.size() != req.candidates.size()) throw ClientError("candidate score count mismatch", false);
  const auto mid = r.candidate_logprobs.begin() + static_cast<std::ptrdiff_t>(candidates.yes.size());
  AnswerLogprobs a;
  a.logp_yes = LogSumExp({r.candidate_logprobs.begin(), mid});
  a.logp_no = LogSumExp({mid, r.candidate_logprobs.end()});
  a.prompt_token_logps = r.prompt_token_logprobs;
  return a;
}

EndpointClient::EndpointClient(std::shared_ptr<ScoringBackend> backend, std::string model, CandidateSet candidates)
    : backend_(std::move(backend)), model_(std::move(model)), candidates_(std::move(candidates)) {}

AnswerLogprobs EndpointClient::Fetch(const QuestionItem& item) {
  return FetchAnswerLogprobs(*backend_, model_, item.prompt, candidates_);
}

}  // namespace modalbench
