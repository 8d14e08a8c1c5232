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

#ifndef MODALBENCH_EVAL_RUN_H_
#define MODALBENCH_EVAL_RUN_H_

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modalbench/eval/client.h"
#include "modalbench/eval/metrics.h"
#include "modalbench/synthesis/realize.h"

namespace modalbench {

struct ModelResponse {
  std::string model;
  std::string item_id;
  std::string form_id;
  Family family = Family::kMain24;
  Modality modality = Modality::kNone;
  ArgForm arg_form = ArgForm::kDisjL;
  Answer ground_truth = Answer::kYes;
  LexiconKind lexicon_kind = LexiconKind::kNatural;
  AnswerLogprobs answer;
  double soft_score = 0;
  Answer greedy_label = Answer::kYes;
  std::optional<double> perplexity;  // absent when the client gave no prompt logprobs
};

ModelResponse MakeResponse(const std::string& model, const QuestionItem& item, const AnswerLogprobs& a);

std::string ResponseToJsonLine(const ModelResponse& r);
ModelResponse ResponseFromJsonLine(std::string_view line);

struct EvalSummary {
  std::string model;
  std::size_t items = 0;
  std::size_t completed = 0;
  std::size_t resumed = 0;  // responses reused from an earlier partial run
  double acc_soft = 0;
  double greedy_accuracy = 0;
  std::optional<double> mean_perplexity;
  std::vector<std::pair<std::string, std::string>> failures;  // (item id, error)
};

struct RunOptions {
  std::string model = "model";
  int concurrency = 1;
};

// Scores every item not already present in out, then rewrites out in dataset
// order with a trailing aggregate record. When some items fail, out keeps the
// partial responses (so a rerun resumes), the failures are written to
// "<out>.failures.json", and the summary lists them.
EvalSummary RunEvaluation(const std::vector<QuestionItem>& items, ScoringClient& client, const std::string& out,
                          const RunOptions& options = {});

struct EvalRun {
  std::vector<ModelResponse> responses;
  std::optional<EvalSummary> aggregate;
};

// Reads a results file; a torn final line is ignored.
EvalRun ReadResults(const std::string& path);

}  // namespace modalbench

#endif  // MODALBENCH_EVAL_RUN_H_
