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

#ifndef MODALBENCH_PROVER_KRIPKE_H_
#define MODALBENCH_PROVER_KRIPKE_H_

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modalbench/logic/formula.h"

namespace modalbench {

enum class FrameClass { kK, kReflexive };
enum class ConsequenceMode { kLocal, kGlobal };

std::string_view FrameClassName(FrameClass f);       // "k" / "t"
std::string_view ConsequenceModeName(ConsequenceMode m);  // "local" / "global"
FrameClass ParseFrameClass(std::string_view name);
ConsequenceMode ParseConsequenceMode(std::string_view name);

using World = std::size_t;

// Finite Kripke model. Atoms missing from a world's valuation are false there.
struct KripkeModel {
  std::size_t world_count = 1;
  std::set<std::pair<World, World>> accessibility;
  std::vector<std::set<std::string>> valuation;  // atoms true at each world
  World designated = 0;

  bool HasEdge(World from, World to) const { return accessibility.count({from, to}) > 0; }
  bool IsTrue(World w, const std::string& atom) const;
  // Checks the structural invariants; reflexivity only when `frames` asks for it.
  bool IsWellFormed(FrameClass frames) const;
};

bool EvalAtWorld(const KripkeModel& m, World w, const Formula& f);
// True iff f holds at every world of m.
bool EvalEverywhere(const KripkeModel& m, const Formula& f);

// World/edge/valuation listing, one item per line.
std::string FormatModel(const KripkeModel& m);

}  // namespace modalbench

#endif  // MODALBENCH_PROVER_KRIPKE_H_
