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

#ifndef MODALBENCH_SYNTHESIS_LEXICON_H_
#define MODALBENCH_SYNTHESIS_LEXICON_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace modalbench {

enum class LexiconKind { kNatural, kNonsense };

std::string_view LexiconKindName(LexiconKind k);  // "natural" / "nonsense"
LexiconKind ParseLexiconKind(std::string_view name);

struct Lexicon {
  LexiconKind kind = LexiconKind::kNatural;
  std::string version = "1.0";
  std::vector<std::string> names;
  std::vector<std::string> verb_phrases;  // progressive form, e.g. "making a pizza"

  // Throws std::invalid_argument on empty lists or duplicate entries.
  void Validate() const;
};

// JSON: {"version", "kind", "names": [...], "verb_phrases": [...]}.
Lexicon LexiconFromJson(std::string_view text);
std::string LexiconToJson(const Lexicon& lex);
Lexicon LoadLexicon(const std::string& path);
void SaveLexicon(const Lexicon& lex, const std::string& path);

// The bundled lexicon, compiled into the binary.
const Lexicon& NaturalLexicon();

// Real first names with pseudo-word verb phrases ("balaring a montery").
// No generated stem or object coincides with a word of the natural verb list.
Lexicon MakeNonsenseLexicon(int names, int verb_phrases, std::uint64_t seed);

}  // namespace modalbench

#endif  // MODALBENCH_SYNTHESIS_LEXICON_H_
