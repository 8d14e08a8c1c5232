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

// Formulas of the normal modal language: atoms, negation, necessity,
// possibility and the three binary connectives.
//
// A Formula is an immutable handle onto a shared tree. Copying is cheap and
// values can be shared freely between threads.
//
// Concrete syntax (used by Parse/Render and every text interface):
//
//   atom      lowercase identifier: [a-z][a-z0-9]*
//   ~f        negation
//   []f       necessity
//   <>f       possibility
//   f | g     disjunction   (left-associative)
//   f & g     conjunction   (left-associative)
//   f -> g    implication   (right-associative)
//
// Precedence from tightest: {~, [], <>} > {|, &} > {->}. `|` and `&` share a
// level, so `p | q & r` reads as `(p | q) & r`.

#ifndef MODALBENCH_LOGIC_FORMULA_H_
#define MODALBENCH_LOGIC_FORMULA_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace modalbench {

enum class Connective { kAtom, kMetaVar, kNot, kBox, kDiamond, kOr, kAnd, kImplies };

// Modal prefix applied uniformly to both argument slots of a logical form.
enum class Modality { kNone, kNecessity, kPossibility };

std::string_view ModalityName(Modality m);  // "none", "necessity", "possibility"
Modality ParseModality(std::string_view name);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class Formula {
 public:
  static Formula Atom(std::string name);
  // Metavariable leaf; only "phi" and "psi" are accepted.
  static Formula MetaVar(std::string name);
  static Formula Not(Formula f);
  static Formula Box(Formula f);
  static Formula Diamond(Formula f);
  static Formula Or(Formula a, Formula b);
  static Formula And(Formula a, Formula b);
  static Formula Implies(Formula a, Formula b);
  // Wraps f in the given modality; kNone returns f unchanged.
  static Formula WithModality(Modality m, Formula f);

  Connective kind() const;
  // Atom or metavariable name; empty for compound nodes.
  const std::string& name() const;
  // Sole operand of a unary node, left operand of a binary node.
  const Formula& lhs() const;
  const Formula& rhs() const;

  bool is_atom() const { return kind() == Connective::kAtom; }
  bool is_unary() const;
  bool is_binary() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  // Total structural order; used for canonical containers.
  friend bool operator<(const Formula& a, const Formula& b);

  std::size_t hash() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula Make(Connective kind, std::string name, const Formula* lhs, const Formula* rhs);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Connective kind;
  std::string name;
  std::optional<Formula> lhs;
  std::optional<Formula> rhs;
  std::size_t hash;
  std::size_t size;
};

inline Connective Formula::kind() const { return node_->kind; }
inline const std::string& Formula::name() const { return node_->name; }
inline std::size_t Formula::hash() const { return node_->hash; }

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// A formula that may contain metavariable leaves. Kept as a distinct type so
// templates cannot be handed to the prover by accident.
class MetaFormula {
 public:
  explicit MetaFormula(Formula tree);
  const Formula& tree() const { return tree_; }
  friend bool operator==(const MetaFormula& a, const MetaFormula& b) { return a.tree_ == b.tree_; }

 private:
  Formula tree_;
};

Formula Parse(std::string_view text);
// Same grammar plus `$phi` / `$psi` metavariable leaves.
MetaFormula ParseTemplate(std::string_view text);

// Minimal-parenthesis rendering; Parse(Render(f)) == f.
std::string Render(const Formula& f);
std::string Render(const MetaFormula& f);

// Replaces every phi leaf with `phi` and every psi leaf with `psi`.
Formula Substitute(const MetaFormula& tmpl, const Formula& phi, const Formula& psi);

// Rewrites into the {~, [], ->} basis:
//   a | b  =>  ~a -> b
//   a & b  =>  ~(a -> ~b)
//   <>a    =>  ~[]~a
Formula ToPrimitiveBasis(const Formula& f);

int ModalDepth(const Formula& f);
std::size_t Size(const Formula& f);
std::set<std::string> Atoms(const Formula& f);
bool ContainsMetaVar(const Formula& f);

}  // namespace modalbench

template <>
struct std::hash<modalbench::Formula> {
  std::size_t operator()(const modalbench::Formula& f) const { return f.hash(); }
};

#endif  // MODALBENCH_LOGIC_FORMULA_H_
