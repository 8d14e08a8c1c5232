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

#ifndef MODALBENCH_SYNTHESIS_DATASET_H_
#define MODALBENCH_SYNTHESIS_DATASET_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modalbench/synthesis/catalog.h"
#include "modalbench/synthesis/lexicon.h"
#include "modalbench/synthesis/realize.h"

namespace modalbench {

// Each interpretation draws two distinct names and two distinct verb phrases
// uniformly; interpretations are independent of each other.
std::vector<Interpretation> SampleInterpretations(const Lexicon& lex, int n, std::uint64_t seed);

// Catalog order major, interpretation index minor. Item ids are
// "<form_id>:<interpretation index>".
std::vector<QuestionItem> BuildDataset(const std::vector<CatalogEntry>& entries,
                                       const std::vector<Interpretation>& interps, LexiconKind kind);

std::string ItemToJsonLine(const QuestionItem& item);
QuestionItem ItemFromJsonLine(std::string_view line);

void WriteDataset(const std::vector<QuestionItem>& items, const std::string& path);
std::vector<QuestionItem> ReadDataset(const std::string& path);

struct DatasetMeta {
  std::uint64_t seed = 0;
  int interpretations = 0;
  LexiconKind lexicon_kind = LexiconKind::kNatural;
  std::string lexicon_version;
  std::vector<std::string> families;
  std::size_t items = 0;
};

// Written next to the dataset as "<path>.meta.json".
void WriteDatasetMeta(const DatasetMeta& meta, const std::string& dataset_path);

}  // namespace modalbench

#endif  // MODALBENCH_SYNTHESIS_DATASET_H_
