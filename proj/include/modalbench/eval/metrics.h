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

#ifndef MODALBENCH_EVAL_METRICS_H_
#define MODALBENCH_EVAL_METRICS_H_

#include <stdexcept>
#include <vector>

#include "modalbench/synthesis/catalog.h"

namespace modalbench {

struct AnswerLogprobs {
  double logp_yes = 0;
  double logp_no = 0;
  std::vector<double> prompt_token_logps;
};

class DegenerateResponse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Relative probability of the ground-truth answer. Throws DegenerateResponse
// when both log-probabilities are -inf or either is NaN.
double SoftAccuracy(const AnswerLogprobs& a, Answer truth);

// exp(-mean(logps)). Throws std::invalid_argument on an empty list.
double PromptPerplexity(const std::vector<double>& logps);

// Ties go to Yes.
Answer GreedyLabel(const AnswerLogprobs& a);

// log(sum(exp(x))); -inf for an empty list.
double LogSumExp(const std::vector<double>& xs);

}  // namespace modalbench

#endif  // MODALBENCH_EVAL_METRICS_H_
