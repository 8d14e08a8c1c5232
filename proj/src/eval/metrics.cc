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

#include "modalbench/eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace modalbench {

double SoftAccuracy(const AnswerLogprobs& a, Answer truth) {
  if (std::isnan(a.logp_yes) || std::isnan(a.logp_no)) throw DegenerateResponse("answer log-probability is NaN");
  const double top = std::max(a.logp_yes, a.logp_no);
  if (std::isinf(top) && top < 0) throw DegenerateResponse("both answers have zero probability");
  const double yes = std::exp(a.logp_yes - top);
  const double no = std::exp(a.logp_no - top);
  return (truth == Answer::kYes ? yes : no) / (yes + no);
}

double PromptPerplexity(const std::vector<double>& logps) {
  if (logps.empty()) throw std::invalid_argument("perplexity of an empty token list");
  double sum = 0;
  for (double x : logps) sum += x;
  return std::exp(-sum / static_cast<double>(logps.size()));
}

Answer GreedyLabel(const AnswerLogprobs& a) { return a.logp_yes >= a.logp_no ? Answer::kYes : Answer::kNo; }

double LogSumExp(const std::vector<double>& xs) {
  if (xs.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(xs.begin(), xs.end());
  if (std::isinf(top)) return top;
  double sum = 0;
  for (double x : xs) sum += std::exp(x - top);
  return top + std::log(sum);
}

}  // namespace modalbench
