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

#ifndef MODALBENCH_EVAL_CLIENT_H_
#define MODALBENCH_EVAL_CLIENT_H_

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modalbench/eval/metrics.h"
#include "modalbench/synthesis/realize.h"

namespace modalbench {

class ClientError : public std::runtime_error {
 public:
  ClientError(const std::string& msg, bool transient) : std::runtime_error(msg), transient_(transient) {}
  bool transient() const { return transient_; }

 private:
  bool transient_;
};

// Item-level scoring: everything run_evaluation needs for one question.
class ScoringClient {
 public:
  virtual ~ScoringClient() = default;
  virtual AnswerLogprobs Fetch(const QuestionItem& item) = 0;
};

// Replays a JSONL file of {item_id, logp_yes, logp_no, prompt_token_logps[]}.
class OfflineClient : public ScoringClient {
 public:
  explicit OfflineClient(const std::string& path);
  AnswerLogprobs Fetch(const QuestionItem& item) override;

 private:
  std::map<std::string, AnswerLogprobs> records_;
};

// logp_yes == logp_no for every prompt.
class UniformMockClient : public ScoringClient {
 public:
  AnswerLogprobs Fetch(const QuestionItem& item) override;
};

// Peeks at the ground truth: logp 0 for the right answer, -10 for the other.
class OracleMockClient : public ScoringClient {
 public:
  AnswerLogprobs Fetch(const QuestionItem& item) override;
};

struct ScoringRequest {
  std::string model;
  std::string prompt;
  std::vector<std::string> candidates;
  bool echo_prompt = true;
};

struct ScoringResponse {
  std::vector<double> candidate_logprobs;  // one per candidate, summed over its tokens
  std::vector<double> prompt_token_logprobs;
};

// Request-level scoring against a language model.
class ScoringBackend {
 public:
  virtual ~ScoringBackend() = default;
  virtual ScoringResponse Score(const ScoringRequest& req) = 0;
};

enum class ApiStyle {
  kNative,  // POST <base>/score {model, prompt, candidates[], echo_prompt}
  kOpenAiCompletions,  // POST <base>/v1/completions with echo=true, max_tokens=0
};

struct HttpOptions {
  std::string base_url;  // e.g. http://127.0.0.1:8000
  ApiStyle style = ApiStyle::kNative;
  std::string api_key;   // sent as a bearer token when nonempty
  int max_attempts = 4;
  std::chrono::milliseconds initial_backoff{200};
  std::chrono::seconds timeout{120};
};

class HttpBackend : public ScoringBackend {
 public:
  explicit HttpBackend(HttpOptions options);
  ScoringResponse Score(const ScoringRequest& req) override;

 private:
  ScoringResponse ScoreOnce(const ScoringRequest& req);
  std::string Post(const std::string& path, const std::string& body);

  HttpOptions options_;
  std::string origin_;
  std::string prefix_;
};

// Caches responses keyed by a content hash of (model, prompt, candidates,
// echo flag). When path is nonempty the cache persists as JSONL.
class CachingBackend : public ScoringBackend {
 public:
  CachingBackend(std::shared_ptr<ScoringBackend> inner, std::string path = "");
  ScoringResponse Score(const ScoringRequest& req) override;
  std::size_t hits() const { return hits_; }

  static std::string Key(const ScoringRequest& req);

 private:
  std::shared_ptr<ScoringBackend> inner_;
  std::string path_;
  std::mutex mu_;
  std::map<std::string, ScoringResponse> cache_;
  std::size_t hits_ = 0;
};

struct CandidateSet {
  std::vector<std::string> yes{" Yes"};
  std::vector<std::string> no{" No"};
};

// Variant probabilities within each side are summed (log-sum-exp).
AnswerLogprobs FetchAnswerLogprobs(ScoringBackend& backend, const std::string& model, const std::string& prompt,
                                   const CandidateSet& candidates, bool echo_prompt = true);

class EndpointClient : public ScoringClient {
 public:
  EndpointClient(std::shared_ptr<ScoringBackend> backend, std::string model, CandidateSet candidates = {});
  AnswerLogprobs Fetch(const QuestionItem& item) override;

 private:
  std::shared_ptr<ScoringBackend> backend_;
  std::string model_;
  CandidateSet candidates_;
};

}  // namespace modalbench

#endif  // MODALBENCH_EVAL_CLIENT_H_
