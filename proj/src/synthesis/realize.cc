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

#include "modalbench/synthesis/realize.h"

#include <cctype>
#include <stdexcept>

namespace modalbench {

namespace {

const Clause& ClauseFor(const Formula& atom, const Interpretation& interp) {
  if (atom.name() == "p") return interp.first;
  if (atom.name() == "q") return interp.second;
  throw std::invalid_argument("no interpretation for atom " + atom.name());
}

// Matches Atom, Not(Atom), M(Atom) and Not(M(Atom)).
bool LiteralShape(const Formula& f, Modality* m, bool* negated, Formula* atom) {
  Formula g = f;
  *negated = false;
  if (g.kind() == Connective::kNot) {
    *negated = true;
    g = g.lhs();
  }
  *m = Modality::kNone;
  if (g.kind() == Connective::kBox) {
    *m = Modality::kNecessity;
    g = g.lhs();
  } else if (g.kind() == Connective::kDiamond) {
    *m = Modality::kPossibility;
    g = g.lhs();
  }
  if (!g.is_atom()) return false;
  *atom = g;
  return true;
}

}  // namespace

std::string RealizeStatement(Modality m, bool negated, const std::string& subject, const std::string& vp) {
  const std::string base = subject + " is " + vp;
  switch (m) {
    case Modality::kNone: return negated ? subject + " isn't " + vp : base;
    case Modality::kNecessity: return negated ? "it's uncertain whether " + base : "it's certain that " + base;
    case Modality::kPossibility: return negated ? "it's impossible that " + base : "it's possible that " + base;
  }
  return base;
}

std::string RealizeFormula(const Formula& f, const Interpretation& interp) {
  Modality m;
  bool negated;
  Formula atom = f;
  if (LiteralShape(f, &m, &negated, &atom)) {
    const Clause& c = ClauseFor(atom, interp);
    return RealizeStatement(m, negated, c.subject, c.verb_phrase);
  }
  switch (f.kind()) {
    case Connective::kOr: return RealizeFormula(f.lhs(), interp) + " or " + RealizeFormula(f.rhs(), interp);
    case Connective::kAnd: return RealizeFormula(f.lhs(), interp) + " and " + RealizeFormula(f.rhs(), interp);
    case Connective::kImplies:
      return "if " + RealizeFormula(f.lhs(), interp) + ", then " + RealizeFormula(f.rhs(), interp);
    case Connective::kBox: return "it's certain that " + RealizeFormula(f.lhs(), interp);
    case Connective::kDiamond: return "it's possible that " + RealizeFormula(f.lhs(), interp);
    default: break;
  }
  throw std::invalid_argument("no English template for " + Render(f));
}

std::string Sentence(const std::string& clause) {
  std::string s = clause;
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s + ".";
}

std::string BuildPrompt(const std::vector<std::string>& statements, const std::string& question_clause) {
  std::string prompt = "Consider the following statements:\n";
  for (const auto& s : statements) prompt += s + "\n";
  prompt += "Question: Based on these statements, can we infer that " + question_clause + "?\nAnswer:";
  return prompt;
}

QuestionItem RealizeQuestion(const CatalogEntry& entry, const Interpretation& interp, LexiconKind kind,
                             const std::string& item_id) {
  const Sequent s = entry.Instantiate();
  std::vector<std::string> statements;
  for (const auto& p : s.premises) statements.push_back(Sentence(RealizeFormula(p, interp)));
  QuestionItem item;
  item.item_id = item_id.empty() ? entry.id : item_id;
  item.form_id = entry.id;
  item.family = entry.family;
  item.modality = entry.modality;
  item.arg_form = entry.arg_form;
  item.interpretation = interp;
  item.prompt = BuildPrompt(statements, RealizeFormula(s.conclusion, interp));
  item.ground_truth = entry.label;
  item.lexicon_kind = kind;
  return item;
}

}  // namespace modalbench
