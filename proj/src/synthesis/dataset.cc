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

#include "modalbench/synthesis/dataset.h"

#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "modalbench/synthesis/rng.h"

namespace modalbench {

namespace {

using Json = nlohmann::ordered_json;

// Two distinct indices in [0, n), uniformly over ordered pairs.
std::pair<std::size_t, std::size_t> DistinctPair(PortableRng& rng, std::size_t n) {
  const std::size_t a = rng.Below(n);
  std::size_t b = rng.Below(n - 1);
  if (b >= a) ++b;
  return {a, b};
}

}  // namespace

std::vector<Interpretation> SampleInterpretations(const Lexicon& lex, int n, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("interpretation count must be positive");
  if (lex.names.size() < 2 || lex.verb_phrases.size() < 2) {
    throw std::invalid_argument("lexicon needs at least 2 names and 2 verb phrases");
  }
  PortableRng rng(seed);
  std::vector<Interpretation> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const auto [s1, s2] = DistinctPair(rng, lex.names.size());
    const auto [v1, v2] = DistinctPair(rng, lex.verb_phrases.size());
    out.push_back({{lex.names[s1], lex.verb_phrases[v1]}, {lex.names[s2], lex.verb_phrases[v2]}});
  }
  return out;
}

std::vector<QuestionItem> BuildDataset(const std::vector<CatalogEntry>& entries,
                                       const std::vector<Interpretation>& interps, LexiconKind kind) {
  std::vector<QuestionItem> items;
  items.reserve(entries.size() * interps.size());
  for (const auto& e : entries) {
    for (std::size_t i = 0; i < interps.size(); ++i) {
      items.push_back(RealizeQuestion(e, interps[i], kind, e.id + ":" + std::to_string(i)));
    }
  }
  return items;
}

std::string ItemToJsonLine(const QuestionItem& item) {
  Json j;
  j["item_id"] = item.item_id;
  j["form_id"] = item.form_id;
  j["modality"] = ModalityName(item.modality);
  j["arg_form"] = ArgFormName(item.arg_form);
  j["family"] = FamilyName(item.family);
  j["ground_truth"] = AnswerName(item.ground_truth);
  j["prompt"] = item.prompt;
  j["lexicon_kind"] = LexiconKindName(item.lexicon_kind);
  j["subjects"] = {item.interpretation.first.subject, item.interpretation.second.subject};
  j["verb_phrases"] = {item.interpretation.first.verb_phrase, item.interpretation.second.verb_phrase};
  return j.dump();
}

QuestionItem ItemFromJsonLine(std::string_view line) {
  try {
    const Json j = Json::parse(line);
    QuestionItem item;
    item.item_id = j.at("item_id").get<std::string>();
    item.form_id = j.at("form_id").get<std::string>();
    item.modality = ParseModality(j.at("modality").get<std::string>());
    item.arg_form = ParseArgForm(j.at("arg_form").get<std::string>());
    item.family = ParseFamily(j.at("family").get<std::string>());
    item.ground_truth = ParseAnswer(j.at("ground_truth").get<std::string>());
    item.prompt = j.at("prompt").get<std::string>();
    item.lexicon_kind = ParseLexiconKind(j.at("lexicon_kind").get<std::string>());
    const auto subjects = j.at("subjects").get<std::vector<std::string>>();
    const auto vps = j.at("verb_phrases").get<std::vector<std::string>>();
    if (subjects.size() != 2 || vps.size() != 2) throw std::invalid_argument("expected two subjects and two verb phrases");
    item.interpretation = {{subjects[0], vps[0]}, {subjects[1], vps[1]}};
    return item;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("bad dataset record: ") + e.what());
  }
}

void WriteDataset(const std::vector<QuestionItem>& items, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dataset " + path);
  for (const auto& item : items) out << ItemToJsonLine(item) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<QuestionItem> ReadDataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open dataset " + path);
  std::vector<QuestionItem> items;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    try {
      items.push_back(ItemFromJsonLine(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return items;
}

void WriteDatasetMeta(const DatasetMeta& meta, const std::string& dataset_path) {
  Json j;
  j["seed"] = meta.seed;
  j["interpretations"] = meta.interpretations;
  j["lexicon_kind"] = LexiconKindName(meta.lexicon_kind);
  j["lexicon_version"] = meta.lexicon_version;
  j["families"] = meta.families;
  j["items"] = meta.items;
  const std::string path = dataset_path + ".meta.json";
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << '\n';
}

}  // namespace modalbench
