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

#ifndef MODALBENCH_SYNTHESIS_CATALOG_H_
#define MODALBENCH_SYNTHESIS_CATALOG_H_

#include <string>
#include <string_view>
#include <vector>

#include "modalbench/logic/formula.h"
#include "modalbench/prover/prover.h"

namespace modalbench {

enum class Family { kMain24, kNecessitation, kDistribution };

enum class ArgForm {
  kDisjL,          // {phi | psi, ~phi} |- psi
  kDisjR,          // {phi | psi, ~psi} |- phi
  kModusPonensL,   // {~phi -> psi, ~phi} |- psi
  kModusTollensR,  // {~phi -> psi, ~psi} |- phi
  kNecIntro,       // {phi} |- M phi
  kBase,
  kTheorem,
  kSpurious,
};

enum class Answer { kYes, kNo };

std::string_view FamilyName(Family f);    // "main24", "necessitation", "distribution"
std::string_view ArgFormName(ArgForm a);  // "disj_l", "disj_r", "mp_l", "mt_r", ...
std::string_view AnswerName(Answer a);    // "Yes" / "No"
Family ParseFamily(std::string_view name);
ArgForm ParseArgForm(std::string_view name);
Answer ParseAnswer(std::string_view name);

struct CatalogEntry {
  std::string id;
  Family family = Family::kMain24;
  Modality modality = Modality::kNone;
  ArgForm arg_form = ArgForm::kDisjL;
  bool fallacy = false;  // main24 only: the flipped (non-entailment) variant
  std::vector<MetaFormula> premises;
  MetaFormula conclusion{Formula::MetaVar("phi")};
  Formula phi = Formula::Atom("p");
  Formula psi = Formula::Atom("q");
  ConsequenceMode mode = ConsequenceMode::kLocal;
  FrameClass frames = FrameClass::kReflexive;
  Answer label = Answer::kYes;            // the prover's verdict under (mode, frames)
  Answer reference_label = Answer::kYes;  // the expected label, independent of the prover

  Sequent Instantiate() const;
  Sequent Instantiate(ConsequenceMode m, FrameClass f) const;
};

// 24 main forms (entailments then fallacies, each grouped by
// modality none / necessity / possibility and rule), 3 necessitation
// variants, 7 distribution rows. Labels come from Decide.
std::vector<CatalogEntry> BuiltinCatalog();

std::vector<CatalogEntry> SelectFamilies(const std::vector<CatalogEntry>& catalog, const std::vector<Family>& families);

const CatalogEntry& FindEntry(const std::vector<CatalogEntry>& catalog, std::string_view id);

struct AuditRow {
  std::string id;
  std::string sequent;
  ConsequenceMode mode;
  FrameClass frames;
  Answer reference_label;
  Answer prover_label;
  bool matches;
  // Main forms only: the same verdict under (local,K), (local,T), (global,T).
  bool stable = true;
  std::string countermodel;  // rendered, when the prover refutes the sequent
};

std::vector<AuditRow> AuditCatalog(const std::vector<CatalogEntry>& catalog);

}  // namespace modalbench

#endif  // MODALBENCH_SYNTHESIS_CATALOG_H_
