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

#include "modalbench/synthesis/catalog.h"

#include <algorithm>
#include <stdexcept>

namespace modalbench {

namespace {

struct RuleShape {
  ArgForm form;
  const char* premise1;
  const char* entail_premise2;
  const char* entail_conclusion;
  const char* fallacy_premise2;
  const char* fallacy_conclusion;
};

// The four syllogism variants; fallacies flip the second premise and the
// conclusion.
constexpr RuleShape kRules[] = {
    {ArgForm::kDisjL, "$phi | $psi", "~$phi", "$psi", "$psi", "~$phi"},
    {ArgForm::kDisjR, "$phi | $psi", "~$psi", "$phi", "$phi", "~$psi"},
    {ArgForm::kModusPonensL, "~$phi -> $psi", "~$phi", "$psi", "$psi", "~$phi"},
    {ArgForm::kModusTollensR, "~$phi -> $psi", "~$psi", "$phi", "$phi", "~$psi"},
};

constexpr Modality kModalities[] = {Modality::kNone, Modality::kNecessity, Modality::kPossibility};

std::string MakeId(Family family, Modality m, ArgForm a, const char* suffix = nullptr) {
  std::string id = std::string(FamilyName(family)) + "-" + std::string(ModalityName(m)) + "-" +
                   std::string(ArgFormName(a));
  if (suffix != nullptr) id += std::string("-") + suffix;
  return id;
}

CatalogEntry MakeEntry(Family family, Modality m, ArgForm a, std::vector<const char*> premises,
                       const char* conclusion, Answer reference) {
  CatalogEntry e;
  e.family = family;
  e.modality = m;
  e.arg_form = a;
  for (const char* p : premises) e.premises.push_back(ParseTemplate(p));
  e.conclusion = ParseTemplate(conclusion);
  e.reference_label = reference;
  return e;
}

Answer Label(const Verdict& v) { return v.valid ? Answer::kYes : Answer::kNo; }

}  // namespace

std::string_view FamilyName(Family f) {
  switch (f) {
    case Family::kMain24: return "main24";
    case Family::kNecessitation: return "necessitation";
    case Family::kDistribution: return "distribution";
  }
  return "main24";
}

std::string_view ArgFormName(ArgForm a) {
  switch (a) {
    case ArgForm::kDisjL: return "disj_l";
    case ArgForm::kDisjR: return "disj_r";
    case ArgForm::kModusPonensL: return "mp_l";
    case ArgForm::kModusTollensR: return "mt_r";
    case ArgForm::kNecIntro: return "nec_intro";
    case ArgForm::kBase: return "base";
    case ArgForm::kTheorem: return "theorem";
    case ArgForm::kSpurious: return "spurious";
  }
  return "disj_l";
}

std::string_view AnswerName(Answer a) { return a == Answer::kYes ? "Yes" : "No"; }

Family ParseFamily(std::string_view name) {
  for (Family f : {Family::kMain24, Family::kNecessitation, Family::kDistribution}) {
    if (FamilyName(f) == name) return f;
  }
  throw std::invalid_argument("unknown family: " + std::string(name));
}

ArgForm ParseArgForm(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(ArgForm::kSpurious); ++i) {
    if (ArgFormName(static_cast<ArgForm>(i)) == name) return static_cast<ArgForm>(i);
  }
  throw std::invalid_argument("unknown argument form: " + std::string(name));
}

Answer ParseAnswer(std::string_view name) {
  if (name == "Yes") return Answer::kYes;
  if (name == "No") return Answer::kNo;
  throw std::invalid_argument("unknown answer: " + std::string(name));
}

Sequent CatalogEntry::Instantiate() const { return Instantiate(mode, frames); }

Sequent CatalogEntry::Instantiate(ConsequenceMode m, FrameClass f) const {
  Sequent s{{}, Substitute(conclusion, phi, psi), m, f};
  for (const auto& p : premises) s.premises.push_back(Substitute(p, phi, psi));
  return s;
}

std::vector<CatalogEntry> BuiltinCatalog() {
  std::vector<CatalogEntry> out;
  const Formula p = Formula::Atom("p");
  const Formula q = Formula::Atom("q");

  for (bool fallacy : {false, true}) {
    for (Modality m : kModalities) {
      for (const RuleShape& r : kRules) {
        CatalogEntry e = MakeEntry(Family::kMain24, m, r.form, {r.premise1, fallacy ? r.fallacy_premise2 : r.entail_premise2},
                                   fallacy ? r.fallacy_conclusion : r.entail_conclusion,
                                   fallacy ? Answer::kNo : Answer::kYes);
        e.id = MakeId(Family::kMain24, m, r.form, fallacy ? "fallacy" : "entail");
        e.fallacy = fallacy;
        e.phi = Formula::WithModality(m, p);
        e.psi = Formula::WithModality(m, q);
        out.push_back(std::move(e));
      }
    }
  }

  // {phi} |- M phi, decided globally: necessitation only holds as a rule.
  const std::pair<Modality, const char*> necessitation[] = {
      {Modality::kNecessity, "[]$phi"}, {Modality::kPossibility, "<>$phi"}, {Modality::kNone, "$phi"}};
  for (const auto& [m, conclusion] : necessitation) {
    CatalogEntry e = MakeEntry(Family::kNecessitation, m, ArgForm::kNecIntro, {"$phi"}, conclusion, Answer::kYes);
    e.id = MakeId(Family::kNecessitation, m, ArgForm::kNecIntro);
    e.mode = ConsequenceMode::kGlobal;
    out.push_back(std::move(e));
  }

  struct DistributionRow {
    Modality m;
    ArgForm form;
    std::vector<const char*> premises;
    const char* conclusion;
    Answer reference;
  };
  const DistributionRow distribution[] = {
      {Modality::kNone, ArgForm::kBase, {"$phi | $psi", "~$phi"}, "$psi", Answer::kYes},
      {Modality::kNecessity, ArgForm::kBase, {"$phi | $psi", "~$phi"}, "$psi", Answer::kYes},
      {Modality::kNecessity, ArgForm::kTheorem, {"[]($phi | $psi)", "[]~$phi"}, "[]$psi", Answer::kYes},
      {Modality::kNecessity, ArgForm::kSpurious, {"[]($phi | $psi)", "~[]$phi"}, "[]$psi", Answer::kNo},
      {Modality::kPossibility, ArgForm::kBase, {"$phi | $psi", "~$phi"}, "$psi", Answer::kYes},
      {Modality::kPossibility, ArgForm::kTheorem, {"<>($phi | $psi)", "<>~$phi"}, "<>$psi", Answer::kYes},
      {Modality::kPossibility, ArgForm::kSpurious, {"<>($phi | $psi)", "~<>$phi"}, "<>$psi", Answer::kYes},
  };
  for (const auto& row : distribution) {
    CatalogEntry e = MakeEntry(Family::kDistribution, row.m, row.form, row.premises, row.conclusion, row.reference);
    e.id = MakeId(Family::kDistribution, row.m, row.form);
    if (row.form == ArgForm::kBase) {
      e.phi = Formula::WithModality(row.m, p);
      e.psi = Formula::WithModality(row.m, q);
    }
    out.push_back(std::move(e));
  }

  for (auto& e : out) e.label = Label(Decide(e.Instantiate()));
  return out;
}

std::vector<CatalogEntry> SelectFamilies(const std::vector<CatalogEntry>& catalog, const std::vector<Family>& families) {
  std::vector<CatalogEntry> out;
  for (const auto& e : catalog) {
    if (std::find(families.begin(), families.end(), e.family) != families.end()) out.push_back(e);
  }
  return out;
}

const CatalogEntry& FindEntry(const std::vector<CatalogEntry>& catalog, std::string_view id) {
  for (const auto& e : catalog) {
    if (e.id == id) return e;
  }
  throw std::invalid_argument("no catalog entry with id " + std::string(id));
}

std::vector<AuditRow> AuditCatalog(const std::vector<CatalogEntry>& catalog) {
  std::vector<AuditRow> rows;
  for (const auto& e : catalog) {
    const Sequent s = e.Instantiate();
    const Verdict v = Decide(s);
    AuditRow row{e.id, FormatSequent(s), e.mode, e.frames, e.reference_label, Label(v), false, true, {}};
    row.matches = row.prover_label == row.reference_label;
    if (v.countermodel) row.countermodel = FormatModel(*v.countermodel);
    if (e.family == Family::kMain24) {
      const Answer local_k = Label(Decide(e.Instantiate(ConsequenceMode::kLocal, FrameClass::kK)));
      const Answer local_t = Label(Decide(e.Instantiate(ConsequenceMode::kLocal, FrameClass::kReflexive)));
      const Answer global_t = Label(Decide(e.Instantiate(ConsequenceMode::kGlobal, FrameClass::kReflexive)));
      row.stable = local_k == local_t && local_t == global_t;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace modalbench
