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

#include "modalbench/prover/prover.h"

#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace modalbench {

namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Formula ParseAt(std::string_view text, std::size_t offset) {
  try {
    return Parse(text);
  } catch (const SyntaxError& e) {
    // Re-anchor the position to the full sequent string.
    std::string msg = e.what();
    msg = msg.substr(0, msg.rfind(" at position "));
    throw SyntaxError(msg, offset + e.position());
  }
}

// Subformula closure in the primitive basis, children before parents.
class Closure {
 public:
  int Add(const Formula& f) {
    if (auto it = index_.find(f); it != index_.end()) return it->second;
    int l = -1, r = -1;
    if (f.is_unary()) l = Add(f.lhs());
    if (f.is_binary()) {
      l = Add(f.lhs());
      r = Add(f.rhs());
    }
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({f.kind(), l, r, -1});
    if (f.kind() == Connective::kAtom) {
      nodes_.back().slot = static_cast<int>(atoms_.size());
      atoms_.push_back(id);
      atom_names_.push_back(f.name());
    } else if (f.kind() == Connective::kBox) {
      nodes_.back().slot = static_cast<int>(boxes_.size());
      boxes_.push_back(id);
    } else if (f.kind() != Connective::kNot && f.kind() != Connective::kImplies) {
      throw std::logic_error("closure expects the primitive basis");
    }
    index_.emplace(f, id);
    return id;
  }

  struct Node {
    Connective kind;
    int lhs;
    int rhs;
    int slot;  // position among atoms or among boxes
  };

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<int>& atoms() const { return atoms_; }
  const std::vector<int>& boxes() const { return boxes_; }
  const std::string& atom_name(std::size_t slot) const { return atom_names_[slot]; }

 private:
  std::unordered_map<Formula, int, FormulaHash> index_;
  std::vector<Node> nodes_;
  std::vector<int> atoms_;
  std::vector<int> boxes_;
  std::vector<std::string> atom_names_;
};

// One candidate world type: the truth value of every closure member.
struct WorldType {
  std::vector<std::uint8_t> truth;
  std::uint64_t boxes_true = 0;   // bit j: boxes[j] holds
  std::uint64_t bodies_true = 0;  // bit j: body of boxes[j] holds
};

WorldType MakeType(const Closure& c, std::uint64_t elementary) {
  const auto& nodes = c.nodes();
  const std::size_t atom_count = c.atoms().size();
  WorldType t;
  t.truth.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    bool v = false;
    switch (n.kind) {
      case Connective::kAtom: v = (elementary >> n.slot) & 1u; break;
      case Connective::kBox: v = (elementary >> (atom_count + n.slot)) & 1u; break;
      case Connective::kNot: v = !t.truth[n.lhs]; break;
      case Connective::kImplies: v = !t.truth[n.lhs] || t.truth[n.rhs]; break;
      default: break;
    }
    t.truth[i] = v;
  }
  for (std::size_t j = 0; j < c.boxes().size(); ++j) {
    const auto& box = nodes[c.boxes()[j]];
    if (t.truth[c.boxes()[j]]) t.boxes_true |= std::uint64_t{1} << j;
    if (t.truth[box.lhs]) t.bodies_true |= std::uint64_t{1} << j;
  }
  return t;
}

bool CanSee(const WorldType& from, const WorldType& to) { return (from.boxes_true & ~to.bodies_true) == 0; }

}  // namespace

Sequent ParseSequent(std::string_view text, ConsequenceMode mode, FrameClass frames) {
  const auto turnstile = text.find("|-");
  if (turnstile == std::string_view::npos) throw SyntaxError("missing '|-'", text.size());
  if (text.find("|-", turnstile + 2) != std::string_view::npos) {
    throw SyntaxError("more than one '|-'", text.find("|-", turnstile + 2));
  }
  Sequent s{{}, Formula::Atom("p"), mode, frames};
  std::string_view lhs = text.substr(0, turnstile);
  std::size_t start = 0;
  if (!Trim(lhs).empty()) {
    while (start <= lhs.size()) {
      std::size_t end = lhs.find(';', start);
      if (end == std::string_view::npos) end = lhs.size();
      std::string_view piece = lhs.substr(start, end - start);
      if (Trim(piece).empty()) throw SyntaxError("empty premise", start);
      s.premises.push_back(ParseAt(piece, start));
      start = end + 1;
    }
  }
  s.conclusion = ParseAt(text.substr(turnstile + 2), turnstile + 2);
  return s;
}

std::string FormatSequent(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.premises.size(); ++i) {
    if (i > 0) out += "; ";
    out += Render(s.premises[i]);
  }
  out += s.premises.empty() ? "|- " : " |- ";
  out += Render(s.conclusion);
  return out;
}

std::set<std::string> Atoms(const Sequent& s) {
  std::set<std::string> out = Atoms(s.conclusion);
  for (const auto& p : s.premises) {
    auto more = Atoms(p);
    out.insert(more.begin(), more.end());
  }
  return out;
}

int ModalDepth(const Sequent& s) {
  int depth = ModalDepth(s.conclusion);
  for (const auto& p : s.premises) depth = std::max(depth, ModalDepth(p));
  return depth;
}

bool IsCountermodel(const Sequent& s, const KripkeModel& m) {
  if (!m.IsWellFormed(s.frames)) return false;
  for (const auto& p : s.premises) {
    const bool holds = s.mode == ConsequenceMode::kLocal ? EvalAtWorld(m, m.designated, p) : EvalEverywhere(m, p);
    if (!holds) return false;
  }
  return !EvalAtWorld(m, m.designated, s.conclusion);
}

Verdict Decide(const Sequent& s, const ProverOptions& options) {
  for (const auto& p : s.premises) {
    if (ContainsMetaVar(p)) throw std::invalid_argument("sequent contains a metavariable");
  }
  if (ContainsMetaVar(s.conclusion)) throw std::invalid_argument("sequent contains a metavariable");

  Closure closure;
  std::vector<int> premise_ids;
  for (const auto& p : s.premises) premise_ids.push_back(closure.Add(ToPrimitiveBasis(p)));
  const int conclusion_id = closure.Add(ToPrimitiveBasis(s.conclusion));

  const std::size_t elementary = closure.atoms().size() + closure.boxes().size();
  if (elementary >= 63 || (std::size_t{1} << elementary) > options.max_types) {
    throw ResourceLimitExceeded("sequent needs 2^" + std::to_string(elementary) + " world types; limit is " +
                                std::to_string(options.max_types));
  }

  const bool reflexive = s.frames == FrameClass::kReflexive;
  const bool global = s.mode == ConsequenceMode::kGlobal;
  const std::size_t type_count = std::size_t{1} << elementary;

  std::vector<WorldType> types;
  types.reserve(type_count);
  std::vector<char> alive(type_count, 0);
  for (std::uint64_t bits = 0; bits < type_count; ++bits) {
    types.push_back(MakeType(closure, bits));
    const WorldType& t = types.back();
    bool ok = !reflexive || CanSee(t, t);
    if (ok && global) {
      for (int id : premise_ids) ok = ok && t.truth[id];
    }
    alive[bits] = ok;
  }

  const std::size_t box_count = closure.boxes().size();
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::uint64_t> bodies;
    {
      std::set<std::uint64_t> seen;
      for (std::size_t i = 0; i < type_count; ++i) {
        if (alive[i] && seen.insert(types[i].bodies_true).second) bodies.push_back(types[i].bodies_true);
      }
    }
    for (std::size_t i = 0; i < type_count; ++i) {
      if (!alive[i]) continue;
      const WorldType& t = types[i];
      for (std::size_t j = 0; j < box_count && alive[i]; ++j) {
        if ((t.boxes_true >> j) & 1u) continue;
        bool witnessed = false;
        for (std::uint64_t body : bodies) {
          if ((t.boxes_true & ~body) == 0 && !((body >> j) & 1u)) {
            witnessed = true;
            break;
          }
        }
        if (!witnessed) {
          alive[i] = 0;
          changed = true;
        }
      }
    }
  }

  std::optional<std::size_t> root;
  for (std::size_t i = 0; i < type_count && !root; ++i) {
    if (!alive[i] || types[i].truth[conclusion_id]) continue;
    bool premises_hold = true;
    for (int id : premise_ids) premises_hold = premises_hold && types[i].truth[id];
    if (premises_hold) root = i;
  }
  if (!root) return Verdict{true, std::nullopt};

  // Keep the root plus the first witness of every unmet box, transitively.
  std::map<std::size_t, World> world_of;
  std::vector<std::size_t> order;
  std::deque<std::size_t> queue{*root};
  world_of[*root] = 0;
  order.push_back(*root);
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    const WorldType& t = types[cur];
    for (std::size_t j = 0; j < box_count; ++j) {
      if ((t.boxes_true >> j) & 1u) continue;
      for (std::size_t cand = 0; cand < type_count; ++cand) {
        if (!alive[cand] || !CanSee(t, types[cand]) || ((types[cand].bodies_true >> j) & 1u)) continue;
        if (world_of.emplace(cand, order.size()).second) {
          order.push_back(cand);
          queue.push_back(cand);
        }
        break;
      }
    }
  }

  KripkeModel m;
  m.world_count = order.size();
  m.designated = 0;
  m.valuation.resize(order.size());
  for (World a = 0; a < order.size(); ++a) {
    const WorldType& t = types[order[a]];
    for (std::size_t slot = 0; slot < closure.atoms().size(); ++slot) {
      if (t.truth[closure.atoms()[slot]]) m.valuation[a].insert(closure.atom_name(slot));
    }
    for (World b = 0; b < order.size(); ++b) {
      if (CanSee(t, types[order[b]])) m.accessibility.insert({a, b});
    }
  }
  if (!IsCountermodel(s, m)) {
    throw std::logic_error("internal error: extracted countermodel does not refute " + FormatSequent(s));
  }
  return Verdict{false, std::move(m)};
}

}  // namespace modalbench
