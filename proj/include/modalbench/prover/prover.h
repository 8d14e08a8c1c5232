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

#ifndef MODALBENCH_PROVER_PROVER_H_
#define MODALBENCH_PROVER_PROVER_H_

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modalbench/logic/formula.h"
#include "modalbench/prover/kripke.h"

namespace modalbench {

struct Sequent {
  std::vector<Formula> premises;
  Formula conclusion;
  ConsequenceMode mode = ConsequenceMode::kLocal;
  FrameClass frames = FrameClass::kReflexive;
};

// `premise; premise |- conclusion`. An empty left-hand side is allowed.
Sequent ParseSequent(std::string_view text, ConsequenceMode mode = ConsequenceMode::kLocal,
                     FrameClass frames = FrameClass::kReflexive);
std::string FormatSequent(const Sequent& s);
std::set<std::string> Atoms(const Sequent& s);
int ModalDepth(const Sequent& s);

struct Verdict {
  bool valid = false;
  std::optional<KripkeModel> countermodel;  // present iff !valid
};

// Local: premises hold at the designated world, conclusion fails there.
// Global: premises hold at every world, conclusion fails at the designated one.
bool IsCountermodel(const Sequent& s, const KripkeModel& m);

class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProverOptions {
  // Upper bound on the number of candidate world types examined.
  std::size_t max_types = std::size_t{1} << 16;
};

// Complete decision procedure for K and T, local and global consequence.
//
// Works on the subformula closure in the {~, [], ->} basis. A world type
// fixes the truth of every atom and every boxed subformula; the remaining
// closure members follow truth-functionally. Types violating the frame
// condition (T: []a forces a) or, in global mode, a premise are discarded up
// front. Then types whose unmet []-formulas cannot be witnessed by a
// surviving type are removed until a fixpoint. The surviving types with the
// relation "every boxed body of u holds at v" form a model in which each type
// is satisfied, so the sequent is invalid iff a survivor contains the
// premises and refutes the conclusion. The returned countermodel keeps only
// the designated type and the witnesses reachable from it.
//
// Throws ResourceLimitExceeded when 2^(atoms + boxes) exceeds max_types.
Verdict Decide(const Sequent& s, const ProverOptions& options = {});

// Exhaustive search over every model with at most `max_worlds` worlds.
//
// World 0 is the evaluation world and the valuations of worlds 1..n-1 are
// enumerated in nondecreasing order; every model is isomorphic to one of
// these. Accessibility rows are assigned world by world and a branch is cut
// as soon as a premise or the conclusion is already decided the wrong way
// by the assigned rows. The first countermodel in this canonical order is
// returned; if none exists the result is "valid up to max_worlds".
Verdict BruteForceOracle(const Sequent& s, std::size_t max_worlds = 5);

}  // namespace modalbench

#endif  // MODALBENCH_PROVER_PROVER_H_
