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

#include "modalbench/synthesis/lexicon.h"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "modalbench/synthesis/rng.h"

namespace modalbench {

extern const char kEmbeddedNaturalLexicon[];

namespace {

using Json = nlohmann::ordered_json;

void CheckUnique(const std::vector<std::string>& items, const char* what) {
  if (items.empty()) throw std::invalid_argument(std::string("lexicon has no ") + what);
  std::set<std::string> seen;
  for (const auto& s : items) {
    if (s.empty()) throw std::invalid_argument(std::string("lexicon has an empty entry in ") + what);
    if (!seen.insert(s).second) throw std::invalid_argument(std::string("duplicate entry in ") + what + ": " + s);
  }
}

constexpr const char* kOnsets[] = {"b", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "z",
                                   "br", "pr", "gr", "tr", "bl", "pl", "sl", "sw", "dr", "fl", "cr"};
constexpr const char* kVowels[] = {"a", "e", "i", "o", "u", "ee", "oa", "ai"};
constexpr const char* kCodas[] = {"", "", "", "n", "r", "l", "nt", "rd"};

template <std::size_t N>
const char* Pick(PortableRng& rng, const char* const (&options)[N]) {
  return options[rng.Below(N)];
}

std::string Syllables(PortableRng& rng, int count) {
  std::string out;
  for (int i = 0; i < count; ++i) {
    out += Pick(rng, kOnsets);
    out += Pick(rng, kVowels);
  }
  return out;
}

std::set<std::string> NaturalWords() {
  std::set<std::string> words;
  for (const auto& vp : NaturalLexicon().verb_phrases) {
    std::istringstream in(vp);
    for (std::string w; in >> w;) words.insert(w);
  }
  return words;
}

}  // namespace

std::string_view LexiconKindName(LexiconKind k) { return k == LexiconKind::kNatural ? "natural" : "nonsense"; }

LexiconKind ParseLexiconKind(std::string_view name) {
  if (name == "natural") return LexiconKind::kNatural;
  if (name == "nonsense") return LexiconKind::kNonsense;
  throw std::invalid_argument("unknown lexicon kind: " + std::string(name));
}

void Lexicon::Validate() const {
  CheckUnique(names, "names");
  CheckUnique(verb_phrases, "verb_phrases");
}

Lexicon LexiconFromJson(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed lexicon JSON: ") + e.what());
  }
  Lexicon lex;
  try {
    lex.kind = ParseLexiconKind(j.at("kind").get<std::string>());
    lex.version = j.value("version", "1.0");
    lex.names = j.at("names").get<std::vector<std::string>>();
    lex.verb_phrases = j.at("verb_phrases").get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("bad lexicon: ") + e.what());
  }
  lex.Validate();
  return lex;
}

std::string LexiconToJson(const Lexicon& lex) {
  Json j;
  j["version"] = lex.version;
  j["kind"] = LexiconKindName(lex.kind);
  j["names"] = lex.names;
  j["verb_phrases"] = lex.verb_phrases;
  return j.dump(1) + "\n";
}

Lexicon LoadLexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lexicon " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return LexiconFromJson(buf.str());
}

void SaveLexicon(const Lexicon& lex, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write lexicon " + path);
  out << LexiconToJson(lex);
  if (!out) throw std::runtime_error("write failed for " + path);
}

const Lexicon& NaturalLexicon() {
  static const Lexicon lex = LexiconFromJson(kEmbeddedNaturalLexicon);
  return lex;
}

Lexicon MakeNonsenseLexicon(int names, int verb_phrases, std::uint64_t seed) {
  if (names < 2 || verb_phrases < 2) throw std::invalid_argument("nonsense lexicon needs at least 2 names and 2 verb phrases");
  const Lexicon& natural = NaturalLexicon();
  if (static_cast<std::size_t>(names) > natural.names.size()) {
    throw std::invalid_argument("at most " + std::to_string(natural.names.size()) + " names available");
  }
  PortableRng rng(seed);
  Lexicon lex;
  lex.kind = LexiconKind::kNonsense;

  // Partial Fisher-Yates over the real names.
  std::vector<std::string> pool = natural.names;
  for (int i = 0; i < names; ++i) {
    std::swap(pool[i], pool[i + rng.Below(pool.size() - i)]);
    lex.names.push_back(pool[i]);
  }

  const std::set<std::string> taken = NaturalWords();
  std::set<std::string> used;
  auto fresh = [&](auto make) {
    for (;;) {
      std::string w = make();
      if (!taken.count(w) && used.insert(w).second) return w;
    }
  };
  std::set<std::string> phrases;
  while (static_cast<int>(lex.verb_phrases.size()) < verb_phrases) {
    const std::string verb = fresh([&] {
      std::string stem = Syllables(rng, 1 + static_cast<int>(rng.Below(2)));
      stem += Pick(rng, kCodas);
      return stem + "ing";
    });
    const std::string noun = fresh([&] {
      std::string n = Syllables(rng, 2 + static_cast<int>(rng.Below(2)));
      return n + Pick(rng, kCodas);
    });
    std::string phrase;
    switch (rng.Below(3)) {
      case 0: phrase = verb + " a " + noun; break;
      case 1: phrase = verb + " the " + noun; break;
      default: phrase = verb + " " + noun + "s"; break;
    }
    if (phrases.insert(phrase).second) lex.verb_phrases.push_back(phrase);
  }
  lex.Validate();
  return lex;
}

}  // namespace modalbench
