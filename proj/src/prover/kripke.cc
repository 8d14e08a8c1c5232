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

#include "modalbench/prover/kripke.h"

#include <sstream>
#include <stdexcept>

namespace modalbench {

std::string_view FrameClassName(FrameClass f) { return f == FrameClass::kK ? "k" : "t"; }

std::string_view ConsequenceModeName(ConsequenceMode m) {
  return m == ConsequenceMode::kLocal ? "local" : "global";
}

FrameClass ParseFrameClass(std::string_view name) {
  if (name == "k" || name == "K") return FrameClass::kK;
  if (name == "t" || name == "T" || name == "reflexive") return FrameClass::kReflexive;
  throw std::invalid_argument("unknown frame class: " + std::string(name));
}

ConsequenceMode ParseConsequenceMode(std::string_view name) {
  if (name == "local") return ConsequenceMode::kLocal;
  if (name == "global") return ConsequenceMode::kGlobal;
  throw std::invalid_argument("unknown consequence mode: " + std::string(name));
}

bool KripkeModel::IsTrue(World w, const std::string& atom) const {
  return w < valuation.size() && valuation[w].count(atom) > 0;
}

bool KripkeModel::IsWellFormed(FrameClass frames) const {
  if (world_count == 0 || designated >= world_count) return false;
  if (valuation.size() > world_count) return false;
  for (const auto& [from, to] : accessibility) {
    if (from >= world_count || to >= world_count) return false;
  }
  if (frames == FrameClass::kReflexive) {
    for (World w = 0; w < world_count; ++w) {
      if (!HasEdge(w, w)) return false;
    }
  }
  return true;
}

bool EvalAtWorld(const KripkeModel& m, World w, const Formula& f) {
  switch (f.kind()) {
    case Connective::kAtom: return m.IsTrue(w, f.name());
    case Connective::kMetaVar: throw std::invalid_argument("cannot evaluate a metavariable");
    case Connective::kNot: return !EvalAtWorld(m, w, f.lhs());
    case Connective::kOr: return EvalAtWorld(m, w, f.lhs()) || EvalAtWorld(m, w, f.rhs());
    case Connective::kAnd: return EvalAtWorld(m, w, f.lhs()) && EvalAtWorld(m, w, f.rhs());
    case Connective::kImplies: return !EvalAtWorld(m, w, f.lhs()) || EvalAtWorld(m, w, f.rhs());
    case Connective::kBox:
      for (World v = 0; v < m.world_count; ++v) {
        if (m.HasEdge(w, v) && !EvalAtWorld(m, v, f.lhs())) return false;
      }
      return true;
    case Connective::kDiamond:
      for (World v = 0; v < m.world_count; ++v) {
        if (m.HasEdge(w, v) && EvalAtWorld(m, v, f.lhs())) return true;
      }
      return false;
  }
  return false;
}

bool EvalEverywhere(const KripkeModel& m, const Formula& f) {
  for (World w = 0; w < m.world_count; ++w) {
    if (!EvalAtWorld(m, w, f)) return false;
  }
  return true;
}

std::string FormatModel(const KripkeModel& m) {
  std::ostringstream out;
  out << "worlds: " << m.world_count << " (designated w" << m.designated << ")\n";
  for (World w = 0; w < m.world_count; ++w) {
    out << "  w" << w << ":";
    bool any = false;
    if (w < m.valuation.size()) {
      for (const auto& atom : m.valuation[w]) {
        out << ' ' << atom;
        any = true;
      }
    }
    if (!any) out << " (no atoms true)";
    out << '\n';
  }
  out << "edges:";
  if (m.accessibility.empty()) out << " none";
  for (const auto& [from, to] : m.accessibility) out << " w" << from << "->w" << to;
  out << '\n';
  return out.str();
}

}  // namespace modalbench
