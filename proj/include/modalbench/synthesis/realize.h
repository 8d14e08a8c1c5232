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

#ifndef MODALBENCH_SYNTHESIS_REALIZE_H_
#define MODALBENCH_SYNTHESIS_REALIZE_H_

#include <string>

#include "modalbench/logic/formula.h"
#include "modalbench/synthesis/catalog.h"
#include "modalbench/synthesis/lexicon.h"

namespace modalbench {

struct Clause {
  std::string subject;
  std::string verb_phrase;

  bool operator==(const Clause&) const = default;
};

// first interprets atom p, second interprets atom q.
struct Interpretation {
  Clause first;
  Clause second;

  bool operator==(const Interpretation&) const = default;
};

struct QuestionItem {
  std::string item_id;
  std::string form_id;
  Family family = Family::kMain24;
  Modality modality = Modality::kNone;
  ArgForm arg_form = ArgForm::kDisjL;
  Interpretation interpretation;
  std::string prompt;
  Answer ground_truth = Answer::kYes;
  LexiconKind lexicon_kind = LexiconKind::kNatural;

  bool operator==(const QuestionItem&) const = default;
};

// Lowercase clause text, e.g. "it's uncertain whether Jane is watching a show".
std::string RealizeStatement(Modality m, bool negated, const std::string& subject, const std::string& vp);

// Renders an instantiated formula over atoms p and q as a lowercase clause.
// Throws std::invalid_argument for shapes with no English template.
std::string RealizeFormula(const Formula& f, const Interpretation& interp);

// Capitalizes the first character and appends ".".
std::string Sentence(const std::string& clause);

std::string BuildPrompt(const std::vector<std::string>& statements, const std::string& question_clause);

QuestionItem RealizeQuestion(const CatalogEntry& entry, const Interpretation& interp,
                             LexiconKind kind = LexiconKind::kNatural, const std::string& item_id = "");

}  // namespace modalbench

#endif  // MODALBENCH_SYNTHESIS_REALIZE_H_
