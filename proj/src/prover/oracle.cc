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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "modalbench/prover/prover.h"

namespace modalbench {

namespace {

using Mask = std::uint32_t;

class ModelSearch {
 public:
  ModelSearch(const Sequent& s, std::size_t worlds)
      : s_(s), n_(worlds), full_((Mask{1} << worlds) - 1), vals_(worlds, 0), rows_(worlds, 0) {
    const auto atoms = Atoms(s);
    atoms_.assign(atoms.begin(), atoms.end());
    premise_depth_.reserve(s.premises.size());
    for (const auto& p : s.premises) premise_depth_.push_back(ModalDepth(p));
    conclusion_depth_ = ModalDepth(s.conclusion);
    shallow_ = ModalDepth(s) <= 1;
  }

  std::optional<KripkeModel> Run() {
    const std::size_t valuations = std::size_t{1} << atoms_.size();
    for (std::size_t root = 0; root < valuations; ++root) {
      vals_[0] = static_cast<Mask>(root);
      if (EnumerateValuations(1, 0, valuations)) return Build();
    }
    return std::nullopt;
  }

 private:
  enum class Status { kPrune, kOpen, kComplete };
  enum class Outcome { kFound, kExhausted, kAbort };

  bool EnumerateValuations(std::size_t w, std::size_t min_val, std::size_t valuations) {
    if (w == n_) {
      std::fill(rows_.begin(), rows_.end(), 0);
      return AssignRow(0) == Outcome::kFound;
    }
    for (std::size_t v = min_val; v < valuations; ++v) {
      vals_[w] = static_cast<Mask>(v);
      if (EnumerateValuations(w + 1, v, valuations)) return true;
    }
    return false;
  }

  Outcome AssignRow(std::size_t w) {
    const bool reflexive = s_.frames == FrameClass::kReflexive;
    const Mask self = Mask{1} << w;
    bool any_open = false;
    for (Mask row = 0; row <= full_; ++row) {
      if (reflexive && !(row & self)) continue;
      rows_[w] = row;
      const Status st = Check(w);
      if (st == Status::kPrune) continue;
      any_open = true;
      if (st == Status::kComplete) {
        for (std::size_t u = w + 1; u < n_; ++u) rows_[u] = reflexive ? (Mask{1} << u) : 0;
        return Outcome::kFound;
      }
      const Outcome next = AssignRow(w + 1);
      if (next == Outcome::kFound) return next;
      // With depth <= 1 a world's truths depend only on its own row, so a
      // world with no acceptable row sinks every earlier choice too.
      if (next == Outcome::kAbort) return next;
    }
    rows_[w] = 0;
    return (!any_open && shallow_) ? Outcome::kAbort : Outcome::kExhausted;
  }

  // Whether f (of modal depth `depth`) at world u is fixed by rows 0..assigned.
  bool Determined(std::size_t u, int depth, std::size_t assigned) const {
    Mask frontier = Mask{1} << u;
    for (int level = 0; level < depth; ++level) {
      Mask next = 0;
      for (std::size_t x = 0; x < n_; ++x) {
        if (!((frontier >> x) & 1u)) continue;
        if (x > assigned) return false;
        next |= rows_[x];
      }
      frontier = next;
    }
    return true;
  }

  Status Check(std::size_t assigned) {
    const bool global = s_.mode == ConsequenceMode::kGlobal;
    bool all_known = true;
    for (std::size_t i = 0; i < s_.premises.size(); ++i) {
      const Mask truth = Eval(s_.premises[i]);
      const std::size_t last = global ? n_ : 1;
      for (std::size_t u = 0; u < last; ++u) {
        if (!Determined(u, premise_depth_[i], assigned)) {
          all_known = false;
          continue;
        }
        if (!((truth >> u) & 1u)) return Status::kPrune;
      }
    }
    if (Determined(0, conclusion_depth_, assigned)) {
      if (Eval(s_.conclusion) & 1u) return Status::kPrune;
    } else {
      all_known = false;
    }
    // In global mode the unassigned worlds still owe the premises.
    if (global && assigned + 1 < n_) return Status::kOpen;
    return all_known ? Status::kComplete : Status::kOpen;
  }

  Mask Eval(const Formula& f) const {
    switch (f.kind()) {
      case Connective::kAtom: {
        Mask out = 0;
        const auto slot = static_cast<std::size_t>(
            std::lower_bound(atoms_.begin(), atoms_.end(), f.name()) - atoms_.begin());
        for (std::size_t u = 0; u < n_; ++u) {
          if ((vals_[u] >> slot) & 1u) out |= Mask{1} << u;
        }
        return out;
      }
      case Connective::kNot: return ~Eval(f.lhs()) & full_;
      case Connective::kOr: return Eval(f.lhs()) | Eval(f.rhs());
      case Connective::kAnd: return Eval(f.lhs()) & Eval(f.rhs());
      case Connective::kImplies: return (~Eval(f.lhs()) | Eval(f.rhs())) & full_;
      case Connective::kBox: {
        const Mask body = Eval(f.lhs());
        Mask out = 0;
        for (std::size_t u = 0; u < n_; ++u) {
          if ((rows_[u] & ~body) == 0) out |= Mask{1} << u;
        }
        return out;
      }
      case Connective::kDiamond: {
        const Mask body = Eval(f.lhs());
        Mask out = 0;
        for (std::size_t u = 0; u < n_; ++u) {
          if (rows_[u] & body) out |= Mask{1} << u;
        }
        return out;
      }
      case Connective::kMetaVar: break;
    }
    throw std::invalid_argument("cannot evaluate a metavariable");
  }

  KripkeModel Build() const {
    KripkeModel m;
    m.world_count = n_;
    m.designated = 0;
    m.valuation.resize(n_);
    for (std::size_t u = 0; u < n_; ++u) {
      for (std::size_t slot = 0; slot < atoms_.size(); ++slot) {
        if ((vals_[u] >> slot) & 1u) m.valuation[u].insert(atoms_[slot]);
      }
      for (std::size_t v = 0; v < n_; ++v) {
        if ((rows_[u] >> v) & 1u) m.accessibility.insert({u, v});
      }
    }
    return m;
  }

  const Sequent& s_;
  std::size_t n_;
  Mask full_;
  std::vector<std::string> atoms_;  // sorted
  std::vector<int> premise_depth_;
  int conclusion_depth_ = 0;
  bool shallow_ = false;
  std::vector<Mask> vals_;
  std::vector<Mask> rows_;
};

}  // namespace

Verdict BruteForceOracle(const Sequent& s, std::size_t max_worlds) {
  if (max_worlds == 0) throw std::invalid_argument("max_worlds must be at least 1");
  if (max_worlds > 8) throw std::invalid_argument("max_worlds above 8 is not supported");
  if (Atoms(s).size() > 12) throw std::invalid_argument("brute-force oracle supports at most 12 atoms");
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    if (auto model = ModelSearch(s, n).Run()) return Verdict{false, std::move(model)};
  }
  return Verdict{true, std::nullopt};
}

}  // namespace modalbench
