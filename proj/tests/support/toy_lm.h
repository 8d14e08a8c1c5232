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

// A word-bigram language model with a character-level fallback for unseen
// words, served over HTTP in both the native and the completions shapes.
// Stands in for a real model endpoint in tests.
#ifndef MODALBENCH_TESTS_SUPPORT_TOY_LM_H_
#define MODALBENCH_TESTS_SUPPORT_TOY_LM_H_

#include <atomic>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"

namespace testing {

struct Token {
  std::string text;  // includes one leading space when present
  std::size_t offset;
};

inline std::vector<Token> Tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const std::size_t start = i;
    if (s[i] == ' ' && i + 1 < s.size() && s[i + 1] != ' ' && s[i + 1] != '\n') ++i;
    const auto word = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '\''; };
    if (word(s[i])) {
      while (i < s.size() && word(s[i])) ++i;
    } else {
      ++i;
    }
    out.push_back({s.substr(start, i - start), start});
  }
  return out;
}

class ToyLm {
 public:
  void Train(const std::string& text) {
    std::string prev = "<s>";
    for (const auto& t : Tokenize(text)) {
      ++bigram_[prev][t.text];
      ++context_[prev];
      ++unigram_[t.text];
      ++total_;
      for (char c : t.text) ++chars_[c];
      ++chars_['\0'];
      prev = t.text;
    }
  }

  // Per-token log-probabilities; the first token gets none.
  std::vector<double> Score(const std::vector<Token>& tokens) const {
    std::vector<double> out;
    for (std::size_t i = 1; i < tokens.size(); ++i) out.push_back(LogProb(tokens[i - 1].text, tokens[i].text));
    return out;
  }

 private:
  double Unigram(const std::string& w) const {
    const double denom = static_cast<double>(total_ + unigram_.size() + 1);
    const auto it = unigram_.find(w);
    if (it != unigram_.end()) return (it->second + 1) / denom;
    double char_total = 0;
    for (const auto& [c, n] : chars_) char_total += n;
    double p = 1.0 / denom;
    for (char c : w + '\0') {
      const auto ct = chars_.find(c);
      p *= ((ct == chars_.end() ? 0 : ct->second) + 1) / (char_total + 128);
    }
    return p;
  }

  double LogProb(const std::string& prev, const std::string& w) const {
    constexpr double k = 2.0;
    double num = k * Unigram(w), den = k;
    const auto ctx = bigram_.find(prev);
    if (ctx != bigram_.end()) {
      const auto it = ctx->second.find(w);
      if (it != ctx->second.end()) num += it->second;
      den += context_.at(prev);
    }
    return std::log(num / den);
  }

  std::map<std::string, std::map<std::string, int>> bigram_;
  std::map<std::string, int> context_;
  std::map<std::string, int> unigram_;
  std::map<char, int> chars_;
  long total_ = 0;
};

// Serves /score and /v1/completions on 127.0.0.1 at an ephemeral port.
// fail_first makes the first n requests answer 503.
class ToyLmServer {
 public:
  explicit ToyLmServer(std::shared_ptr<const ToyLm> lm, int fail_first = 0) : lm_(std::move(lm)), fail_(fail_first) {
    using nlohmann::json;
    server_.Post("/score", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests_;
      if (fail_ > 0) {
        --fail_;
        res.status = 503;
        return;
      }
      const json body = json::parse(req.body);
      const std::string prompt = body.at("prompt");
      const auto prompt_tokens = Tokenize(prompt);
      json out;
      out["candidate_logprobs"] = json::array();
      for (const std::string c : body.at("candidates")) {
        const auto logps = lm_->Score(Tokenize(prompt + c));
        double sum = 0;
        for (std::size_t i = prompt_tokens.size() - 1; i < logps.size(); ++i) sum += logps[i];
        out["candidate_logprobs"].push_back(sum);
      }
      if (body.value("echo_prompt", false)) out["prompt_token_logprobs"] = lm_->Score(prompt_tokens);
      res.set_content(out.dump(), "application/json");
    });
    server_.Post("/v1/completions", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests_;
      if (fail_ > 0) {
        --fail_;
        res.status = 503;
        return;
      }
      const json body = json::parse(req.body);
      const auto tokens = Tokenize(body.at("prompt").get<std::string>());
      const auto logps = lm_->Score(tokens);
      json lp{{"tokens", json::array()}, {"token_logprobs", json::array()}, {"text_offset", json::array()}};
      for (std::size_t i = 0; i < tokens.size(); ++i) {
        lp["tokens"].push_back(tokens[i].text);
        lp["text_offset"].push_back(tokens[i].offset);
        lp["token_logprobs"].push_back(i == 0 ? json(nullptr) : json(logps[i - 1]));
      }
      res.set_content(json{{"choices", json::array({json{{"text", ""}, {"logprobs", lp}}})}}.dump(),
                      "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~ToyLmServer() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }
  int requests() const { return requests_; }

 private:
  std::shared_ptr<const ToyLm> lm_;
  std::atomic<int> fail_;
  std::atomic<int> requests_{0};
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace testing

#endif  // MODALBENCH_TESTS_SUPPORT_TOY_LM_H_
