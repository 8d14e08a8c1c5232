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

#ifndef MODALBENCH_ANALYSIS_ANALYSIS_H_
#define MODALBENCH_ANALYSIS_ANALYSIS_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modalbench/analysis/stats.h"
#include "modalbench/eval/run.h"

namespace modalbench {

// The six argument-form groups of the main forms: three valid syllogisms and
// their fallacy counterparts.
enum class ArgGroup {
  kDisjunctive,
  kModusPonens,
  kModusTollens,
  kAffirmingDisjunct,
  kAffirmingConsequent,
  kDenyingAntecedent,
};

std::string_view ArgGroupName(ArgGroup g);
// Only defined for the four main-form rules.
ArgGroup ArgGroupOf(ArgForm rule, Answer validity);

struct Observation {
  std::string model;
  std::string item_id;
  std::string form_id;
  Family family = Family::kMain24;
  Modality modality = Modality::kNone;
  ArgForm arg_form = ArgForm::kDisjL;
  Answer validity = Answer::kYes;
  LexiconKind lexicon = LexiconKind::kNatural;
  double soft_score = 0;
  double yes_share = 0;  // P(Yes) / (P(Yes) + P(No))
  std::optional<double> perplexity;
};

std::vector<Observation> ObservationsFromRun(const EvalRun& run);

struct HumanObservation {
  std::string participant;
  std::string item_id;
  std::string form_id;
  Modality modality = Modality::kNone;
  ArgForm arg_form = ArgForm::kDisjL;
  Answer validity = Answer::kYes;
  bool correct = false;
  double rt_ms = 0;
};

// Reads the study service's trial export.
std::vector<HumanObservation> LoadHumanTrials(const std::string& path);

struct GroupRow {
  std::string model;
  std::size_t n = 0;
  double overall = 0;
  std::array<std::optional<double>, 3> modality;  // none, necessity, possibility
  std::array<std::optional<double>, 6> arg_group;  // ArgGroup order
  std::string max_modality;                       // column name of the row-wise maximum
  std::string max_arg_group;
};

// Main-form observations only, one row per model.
std::vector<GroupRow> GroupTable(const std::vector<Observation>& obs);
GroupRow HumanGroupRow(const std::vector<HumanObservation>& obs);

struct FitOptions {
  bool per_model_terms = true;   // per-model intercepts and perplexity slopes
  bool per_form_means = false;   // average over interpretations first
  bool standardize_perplexity = false;
};

// Soft accuracy on valid main forms ~ modality + argument group + perplexity.
Fit FitAccuracyModel(const std::vector<Observation>& obs, const FitOptions& opts = {});
// Relative P(Yes) on all main forms ~ modality + argument group + perplexity.
Fit FitAffirmationModel(const std::vector<Observation>& obs, const FitOptions& opts = {});

// The directed hypotheses on modality and on the valid argument groups.
std::vector<ContrastResult> LogicalFormContrasts(const Fit& fit);

struct HumanFit {
  Fit full;
  LikelihoodRatioTest drop_arg_group;
};

// logit(correct) on valid main forms ~ modality + argument group + rt (s)
// + per-participant intercepts.
HumanFit FitHumanModel(const std::vector<HumanObservation>& obs);

// Writes every report CSV into dir and returns the file names. Either input
// may be empty; the reports that need it are then skipped.
std::vector<std::string> WriteReports(const std::string& dir, const std::vector<Observation>& obs,
                                      const std::vector<HumanObservation>& human, const FitOptions& opts = {});

}  // namespace modalbench

#endif  // MODALBENCH_ANALYSIS_ANALYSIS_H_
