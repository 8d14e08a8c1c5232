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

#include "modalbench/logic/formula.h"

#include <algorithm>
#include <cctype>
#include <functional>
#include <utility>
#include <vector>

namespace modalbench {

namespace {

constexpr std::size_t kHashSeed = 0x9e3779b97f4a7c15ull;

std::size_t Combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + kHashSeed + (seed << 6) + (seed >> 2));
}

bool IsValidAtomName(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::islower(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
  });
}

}  // namespace

std::string_view ModalityName(Modality m) {
  switch (m) {
    case Modality::kNone: return "none";
    case Modality::kNecessity: return "necessity";
    case Modality::kPossibility: return "possibility";
  }
  return "none";
}

Modality ParseModality(std::string_view name) {
  if (name == "none") return Modality::kNone;
  if (name == "necessity") return Modality::kNecessity;
  if (name == "possibility") return Modality::kPossibility;
  throw std::invalid_argument("unknown modality: " + std::string(name));
}

SyntaxError::SyntaxError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}

Formula Formula::Make(Connective kind, std::string name, const Formula* lhs, const Formula* rhs) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->name = std::move(name);
  std::size_t h = Combine(kHashSeed, static_cast<std::size_t>(kind));
  std::size_t size = 1;
  h = Combine(h, std::hash<std::string>{}(node->name));
  if (lhs != nullptr) {
    node->lhs = *lhs;
    h = Combine(h, lhs->hash());
    size += lhs->node_->size;
  }
  if (rhs != nullptr) {
    node->rhs = *rhs;
    h = Combine(h, rhs->hash());
    size += rhs->node_->size;
  }
  node->hash = h;
  node->size = size;
  return Formula(std::move(node));
}

Formula Formula::Atom(std::string name) {
  if (!IsValidAtomName(name)) {
    throw std::invalid_argument("atom names must be lowercase alphanumeric: '" + name + "'");
  }
  return Make(Connective::kAtom, std::move(name), nullptr, nullptr);
}

Formula Formula::MetaVar(std::string name) {
  if (name != "phi" && name != "psi") {
    throw std::invalid_argument("unknown metavariable: '" + name + "'");
  }
  return Make(Connective::kMetaVar, std::move(name), nullptr, nullptr);
}

Formula Formula::Not(Formula f) { return Make(Connective::kNot, {}, &f, nullptr); }
Formula Formula::Box(Formula f) { return Make(Connective::kBox, {}, &f, nullptr); }
Formula Formula::Diamond(Formula f) { return Make(Connective::kDiamond, {}, &f, nullptr); }
Formula Formula::Or(Formula a, Formula b) { return Make(Connective::kOr, {}, &a, &b); }
Formula Formula::And(Formula a, Formula b) { return Make(Connective::kAnd, {}, &a, &b); }
Formula Formula::Implies(Formula a, Formula b) { return Make(Connective::kImplies, {}, &a, &b); }

Formula Formula::WithModality(Modality m, Formula f) {
  switch (m) {
    case Modality::kNone: return f;
    case Modality::kNecessity: return Box(std::move(f));
    case Modality::kPossibility: return Diamond(std::move(f));
  }
  return f;
}

const Formula& Formula::lhs() const {
  if (!node_->lhs) throw std::logic_error("formula has no operand");
  return *node_->lhs;
}

const Formula& Formula::rhs() const {
  if (!node_->rhs) throw std::logic_error("formula has no right operand");
  return *node_->rhs;
}

bool Formula::is_unary() const {
  return kind() == Connective::kNot || kind() == Connective::kBox || kind() == Connective::kDiamond;
}

bool Formula::is_binary() const {
  return kind() == Connective::kOr || kind() == Connective::kAnd || kind() == Connective::kImplies;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto* x = a.node_.get();
  const auto* y = b.node_.get();
  if (x->hash != y->hash || x->kind != y->kind || x->size != y->size || x->name != y->name) return false;
  if (x->lhs && !(*x->lhs == *y->lhs)) return false;
  if (x->rhs && !(*x->rhs == *y->rhs)) return false;
  return true;
}

bool operator<(const Formula& a, const Formula& b) {
  const auto* x = a.node_.get();
  const auto* y = b.node_.get();
  if (x == y) return false;
  if (x->kind != y->kind) return x->kind < y->kind;
  if (x->name != y->name) return x->name < y->name;
  if (x->lhs) {
    if (*x->lhs < *y->lhs) return true;
    if (*y->lhs < *x->lhs) return false;
  }
  if (x->rhs) {
    if (*x->rhs < *y->rhs) return true;
    if (*y->rhs < *x->rhs) return false;
  }
  return false;
}

MetaFormula::MetaFormula(Formula tree) : tree_(std::move(tree)) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class TokenKind { kIdent, kMeta, kNot, kBox, kDiamond, kOr, kAnd, kImplies, kLParen, kRParen, kEnd };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> Tokenize(std::string_view text, bool allow_meta) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::islower(static_cast<unsigned char>(c))) {
      while (i < text.size() && (std::islower(static_cast<unsigned char>(text[i])) ||
                                 std::isdigit(static_cast<unsigned char>(text[i])))) {
        ++i;
      }
      tokens.push_back({TokenKind::kIdent, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (c == '$' && allow_meta) {
      ++i;
      while (i < text.size() && std::islower(static_cast<unsigned char>(text[i]))) ++i;
      std::string name(text.substr(start + 1, i - start - 1));
      if (name != "phi" && name != "psi") throw SyntaxError("unknown metavariable '$" + name + "'", start);
      tokens.push_back({TokenKind::kMeta, std::move(name), start});
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == "[]") {
      tokens.push_back({TokenKind::kBox, "[]", start});
      i += 2;
    } else if (two == "<>") {
      tokens.push_back({TokenKind::kDiamond, "<>", start});
      i += 2;
    } else if (two == "->") {
      tokens.push_back({TokenKind::kImplies, "->", start});
      i += 2;
    } else if (c == '~') {
      tokens.push_back({TokenKind::kNot, "~", start});
      ++i;
    } else if (c == '|') {
      tokens.push_back({TokenKind::kOr, "|", start});
      ++i;
    } else if (c == '&') {
      tokens.push_back({TokenKind::kAnd, "&", start});
      ++i;
    } else if (c == '(') {
      tokens.push_back({TokenKind::kLParen, "(", start});
      ++i;
    } else if (c == ')') {
      tokens.push_back({TokenKind::kRParen, ")", start});
      ++i;
    } else {
      throw SyntaxError(std::string("unexpected character '") + c + "'", start);
    }
  }
  tokens.push_back({TokenKind::kEnd, "", text.size()});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula ParseAll() {
    if (Peek().kind == TokenKind::kEnd) throw SyntaxError("empty formula", Peek().pos);
    Formula f = ParseImplication();
    if (Peek().kind == TokenKind::kRParen) throw SyntaxError("unbalanced ')'", Peek().pos);
    if (Peek().kind != TokenKind::kEnd) throw SyntaxError("unexpected '" + Peek().text + "'", Peek().pos);
    return f;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Next() { return tokens_[pos_++]; }

  Formula ParseImplication() {
    Formula lhs = ParseJunction();
    if (Peek().kind == TokenKind::kImplies) {
      Next();
      return Formula::Implies(lhs, ParseImplication());
    }
    return lhs;
  }

  Formula ParseJunction() {
    Formula acc = ParseUnary();
    while (Peek().kind == TokenKind::kOr || Peek().kind == TokenKind::kAnd) {
      const bool is_or = Next().kind == TokenKind::kOr;
      Formula rhs = ParseUnary();
      acc = is_or ? Formula::Or(acc, rhs) : Formula::And(acc, rhs);
    }
    return acc;
  }

  Formula ParseUnary() {
    const Token& tok = Next();
    switch (tok.kind) {
      case TokenKind::kNot: return Formula::Not(ParseUnary());
      case TokenKind::kBox: return Formula::Box(ParseUnary());
      case TokenKind::kDiamond: return Formula::Diamond(ParseUnary());
      case TokenKind::kIdent: return Formula::Atom(tok.text);
      case TokenKind::kMeta: return Formula::MetaVar(tok.text);
      case TokenKind::kLParen: {
        Formula inner = ParseImplication();
        if (Peek().kind != TokenKind::kRParen) {
          throw SyntaxError("unbalanced '(' opened at position " + std::to_string(tok.pos), Peek().pos);
        }
        Next();
        return inner;
      }
      case TokenKind::kEnd: throw SyntaxError("unexpected end of input", tok.pos);
      default: throw SyntaxError("unexpected '" + tok.text + "'", tok.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// Binding strength of a node when it appears as an operand.
int Level(const Formula& f) {
  switch (f.kind()) {
    case Connective::kImplies: return 1;
    case Connective::kOr:
    case Connective::kAnd: return 2;
    default: return 3;
  }
}

void RenderInto(const Formula& f, std::string& out) {
  auto child = [&out](const Formula& c, bool parens) {
    if (parens) out.push_back('(');
    RenderInto(c, out);
    if (parens) out.push_back(')');
  };
  switch (f.kind()) {
    case Connective::kAtom: out += f.name(); return;
    case Connective::kMetaVar: out += "$" + f.name(); return;
    case Connective::kNot: out += "~"; child(f.lhs(), Level(f.lhs()) < 3); return;
    case Connective::kBox: out += "[]"; child(f.lhs(), Level(f.lhs()) < 3); return;
    case Connective::kDiamond: out += "<>"; child(f.lhs(), Level(f.lhs()) < 3); return;
    case Connective::kOr:
    case Connective::kAnd:
      child(f.lhs(), Level(f.lhs()) < 2);
      out += f.kind() == Connective::kOr ? " | " : " & ";
      child(f.rhs(), Level(f.rhs()) < 3);
      return;
    case Connective::kImplies:
      child(f.lhs(), Level(f.lhs()) < 2);
      out += " -> ";
      child(f.rhs(), false);
      return;
  }
}

Formula SubstituteImpl(const Formula& f, const Formula& phi, const Formula& psi) {
  switch (f.kind()) {
    case Connective::kAtom: return f;
    case Connective::kMetaVar: return f.name() == "phi" ? phi : psi;
    case Connective::kNot: return Formula::Not(SubstituteImpl(f.lhs(), phi, psi));
    case Connective::kBox: return Formula::Box(SubstituteImpl(f.lhs(), phi, psi));
    case Connective::kDiamond: return Formula::Diamond(SubstituteImpl(f.lhs(), phi, psi));
    case Connective::kOr: return Formula::Or(SubstituteImpl(f.lhs(), phi, psi), SubstituteImpl(f.rhs(), phi, psi));
    case Connective::kAnd: return Formula::And(SubstituteImpl(f.lhs(), phi, psi), SubstituteImpl(f.rhs(), phi, psi));
    case Connective::kImplies:
      return Formula::Implies(SubstituteImpl(f.lhs(), phi, psi), SubstituteImpl(f.rhs(), phi, psi));
  }
  return f;
}

void CollectAtoms(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) {
    out.insert(f.name());
  } else if (f.is_unary()) {
    CollectAtoms(f.lhs(), out);
  } else if (f.is_binary()) {
    CollectAtoms(f.lhs(), out);
    CollectAtoms(f.rhs(), out);
  }
}

}  // namespace

Formula Parse(std::string_view text) {
  Formula f = Parser(Tokenize(text, /*allow_meta=*/false)).ParseAll();
  return f;
}

MetaFormula ParseTemplate(std::string_view text) {
  return MetaFormula(Parser(Tokenize(text, /*allow_meta=*/true)).ParseAll());
}

std::string Render(const Formula& f) {
  std::string out;
  RenderInto(f, out);
  return out;
}

std::string Render(const MetaFormula& f) { return Render(f.tree()); }

Formula Substitute(const MetaFormula& tmpl, const Formula& phi, const Formula& psi) {
  if (ContainsMetaVar(phi) || ContainsMetaVar(psi)) {
    throw std::invalid_argument("substituted formulas must not contain metavariables");
  }
  return SubstituteImpl(tmpl.tree(), phi, psi);
}

Formula ToPrimitiveBasis(const Formula& f) {
  switch (f.kind()) {
    case Connective::kAtom:
    case Connective::kMetaVar: return f;
    case Connective::kNot: return Formula::Not(ToPrimitiveBasis(f.lhs()));
    case Connective::kBox: return Formula::Box(ToPrimitiveBasis(f.lhs()));
    case Connective::kDiamond: return Formula::Not(Formula::Box(Formula::Not(ToPrimitiveBasis(f.lhs()))));
    case Connective::kOr: return Formula::Implies(Formula::Not(ToPrimitiveBasis(f.lhs())), ToPrimitiveBasis(f.rhs()));
    case Connective::kAnd:
      return Formula::Not(Formula::Implies(ToPrimitiveBasis(f.lhs()), Formula::Not(ToPrimitiveBasis(f.rhs()))));
    case Connective::kImplies: return Formula::Implies(ToPrimitiveBasis(f.lhs()), ToPrimitiveBasis(f.rhs()));
  }
  return f;
}

int ModalDepth(const Formula& f) {
  switch (f.kind()) {
    case Connective::kAtom:
    case Connective::kMetaVar: return 0;
    case Connective::kNot: return ModalDepth(f.lhs());
    case Connective::kBox:
    case Connective::kDiamond: return 1 + ModalDepth(f.lhs());
    default: return std::max(ModalDepth(f.lhs()), ModalDepth(f.rhs()));
  }
}

std::size_t Size(const Formula& f) {
  if (f.is_unary()) return 1 + Size(f.lhs());
  if (f.is_binary()) return 1 + Size(f.lhs()) + Size(f.rhs());
  return 1;
}

std::set<std::string> Atoms(const Formula& f) {
  std::set<std::string> out;
  CollectAtoms(f, out);
  return out;
}

bool ContainsMetaVar(const Formula& f) {
  if (f.kind() == Connective::kMetaVar) return true;
  if (f.is_unary()) return ContainsMetaVar(f.lhs());
  if (f.is_binary()) return ContainsMetaVar(f.lhs()) || ContainsMetaVar(f.rhs());
  return false;
}

}  // namespace modalbench
