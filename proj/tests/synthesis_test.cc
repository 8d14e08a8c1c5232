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

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "modalbench/synthesis/catalog.h"
#include "modalbench/synthesis/dataset.h"
#include "modalbench/synthesis/lexicon.h"
#include "modalbench/synthesis/realize.h"

namespace modalbench {
namespace {

const Interpretation kJaneJohn{{"Jane", "watching a show"}, {"John", "reading a book"}};

const std::vector<CatalogEntry>& Catalog() {
  static const auto catalog = BuiltinCatalog();
  return catalog;
}

std::string TempPath(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("modalbench_" + name)).string();
}

TEST(CatalogTest, FamilySizes) {
  std::map<Family, int> counts;
  for (const auto& e : Catalog()) ++counts[e.family];
  EXPECT_EQ(counts[Family::kMain24], 24);
  EXPECT_EQ(counts[Family::kNecessitation], 3);
  EXPECT_EQ(counts[Family::kDistribution], 7);
  std::set<std::string> ids;
  for (const auto& e : Catalog()) EXPECT_TRUE(ids.insert(e.id).second) << e.id;
}

TEST(CatalogTest, MainFormsBalanced) {
  int yes = 0;
  for (const auto& e : SelectFamilies(Catalog(), {Family::kMain24})) {
    yes += e.label == Answer::kYes;
    EXPECT_EQ(e.label == Answer::kNo, e.fallacy) << e.id;
  }
  EXPECT_EQ(yes, 12);
}

TEST(CatalogTest, ExampleEntries) {
  const auto& first = Catalog().front();
  EXPECT_EQ(FormatSequent(first.Instantiate()), FormatSequent(ParseSequent("p | q; ~p |- q")));
  EXPECT_EQ(first.label, Answer::kYes);

  const auto& mt = FindEntry(Catalog(), "main24-necessity-mt_r-fallacy");
  EXPECT_EQ(FormatSequent(mt.Instantiate()), FormatSequent(ParseSequent("~[]p -> []q; []p |- ~[]q")));
  EXPECT_EQ(mt.label, Answer::kNo);

  const auto& theorem = FindEntry(Catalog(), "distribution-possibility-theorem");
  EXPECT_EQ(theorem.label, Answer::kNo);
  EXPECT_EQ(theorem.reference_label, Answer::kYes);
}

TEST(CatalogTest, AuditFlagsOnlyTheDiamondTheorem) {
  std::vector<std::string> divergent;
  for (const auto& row : AuditCatalog(Catalog())) {
    EXPECT_TRUE(row.stable) << row.id;
    if (!row.matches) {
      divergent.push_back(row.id);
      EXPECT_FALSE(row.countermodel.empty());
    }
  }
  EXPECT_EQ(divergent, std::vector<std::string>{"distribution-possibility-theorem"});
}

TEST(CatalogTest, NecessitationNeedsGlobalMode) {
  for (const auto& e : SelectFamilies(Catalog(), {Family::kNecessitation})) {
    EXPECT_EQ(e.label, Answer::kYes) << e.id;
    const bool local = Decide(e.Instantiate(ConsequenceMode::kLocal, FrameClass::kReflexive)).valid;
    // Over reflexive frames p already yields <>p at the same world.
    EXPECT_EQ(local, e.modality != Modality::kNecessity) << e.id;
  }
}

TEST(RealizeTest, StatementTemplates) {
  EXPECT_EQ(RealizeStatement(Modality::kNone, true, "Jane", "watching a show"), "Jane isn't watching a show");
  EXPECT_EQ(RealizeStatement(Modality::kNecessity, true, "Jane", "watching a show"),
            "it's uncertain whether Jane is watching a show");
  EXPECT_EQ(RealizeStatement(Modality::kPossibility, false, "John", "reading a book"),
            "it's possible that John is reading a book");
  EXPECT_EQ(RealizeStatement(Modality::kPossibility, true, "John", "reading a book"),
            "it's impossible that John is reading a book");
}

TEST(RealizeTest, GoldenMainForms) {
  std::ifstream in(std::string(MODALBENCH_TEST_DATA_DIR) + "/golden_forms.json");
  ASSERT_TRUE(in);
  const auto golden = nlohmann::json::parse(in);
  const auto main = SelectFamilies(Catalog(), {Family::kMain24});
  ASSERT_EQ(golden.size(), main.size());
  for (std::size_t i = 0; i < main.size(); ++i) {
    const auto& g = golden[i];
    std::vector<Formula> premises;
    for (const auto& p : g["premises"]) premises.push_back(Parse(p.get<std::string>()));
    const Sequent s = main[i].Instantiate();
    EXPECT_EQ(s.premises, premises) << main[i].id;
    EXPECT_EQ(s.conclusion, Parse(g["conclusion"].get<std::string>())) << main[i].id;
    EXPECT_EQ(main[i].label == Answer::kYes, g["valid"].get<bool>()) << main[i].id;

    const std::string expected =
        BuildPrompt(g["statements"].get<std::vector<std::string>>(), g["question_clause"].get<std::string>());
    EXPECT_EQ(RealizeQuestion(main[i], kJaneJohn).prompt, expected) << main[i].id;
  }
}

TEST(RealizeTest, PromptSkeletonIsExact) {
  const auto item = RealizeQuestion(Catalog().front(), kJaneJohn);
  EXPECT_EQ(item.prompt,
            "Consider the following statements:\n"
            "Jane is watching a show or John is reading a book.\n"
            "Jane isn't watching a show.\n"
            "Question: Based on these statements, can we infer that John is reading a book?\n"
            "Answer:");
  EXPECT_EQ(item.ground_truth, Answer::kYes);
}

TEST(RealizeTest, DistributionAndNecessitationForms) {
  const auto theorem = RealizeQuestion(FindEntry(Catalog(), "distribution-necessity-theorem"), kJaneJohn);
  EXPECT_NE(theorem.prompt.find("It's certain that Jane is watching a show or John is reading a book.\n"
                                "It's certain that Jane isn't watching a show.\n"),
            std::string::npos)
      << theorem.prompt;
  const auto spurious = RealizeQuestion(FindEntry(Catalog(), "distribution-possibility-spurious"), kJaneJohn);
  EXPECT_NE(spurious.prompt.find("It's impossible that Jane is watching a show.\n"), std::string::npos);
  const auto nec = RealizeQuestion(FindEntry(Catalog(), "necessitation-necessity-nec_intro"), kJaneJohn);
  EXPECT_EQ(nec.prompt,
            "Consider the following statements:\n"
            "Jane is watching a show.\n"
            "Question: Based on these statements, can we infer that it's certain that Jane is watching a show?\n"
            "Answer:");
}

int CountLines(const std::string& s, const std::string& prefix) {
  std::istringstream in(s);
  int n = 0;
  for (std::string line; std::getline(in, line);) n += line.rfind(prefix, 0) == 0;
  return n;
}

TEST(LexiconTest, NaturalLexiconShape) {
  const auto& lex = NaturalLexicon();
  EXPECT_EQ(lex.kind, LexiconKind::kNatural);
  EXPECT_EQ(lex.names.size(), 200u);
  EXPECT_GE(lex.verb_phrases.size(), 200u);
  lex.Validate();
  for (const auto& vp : lex.verb_phrases) EXPECT_NE(vp.find("ing"), std::string::npos) << vp;
}

TEST(LexiconTest, JsonRoundTrip) {
  const auto lex = MakeNonsenseLexicon(20, 30, 3);
  const auto back = LexiconFromJson(LexiconToJson(lex));
  EXPECT_EQ(back.names, lex.names);
  EXPECT_EQ(back.verb_phrases, lex.verb_phrases);
  EXPECT_EQ(back.kind, LexiconKind::kNonsense);
  EXPECT_THROW(LexiconFromJson(R"({"kind":"natural","names":["A","A"],"verb_phrases":["x","y"]})"),
               std::invalid_argument);
  EXPECT_THROW(LexiconFromJson("{"), std::invalid_argument);
}

TEST(LexiconTest, NonsenseIsDeterministicAndDisjoint) {
  const auto a = MakeNonsenseLexicon(100, 200, 17);
  const auto b = MakeNonsenseLexicon(100, 200, 17);
  EXPECT_EQ(a.names, b.names);
  EXPECT_EQ(a.verb_phrases, b.verb_phrases);
  EXPECT_NE(a.verb_phrases, MakeNonsenseLexicon(100, 200, 18).verb_phrases);

  std::set<std::string> natural_words;
  for (const auto& vp : NaturalLexicon().verb_phrases) {
    std::istringstream in(vp);
    for (std::string w; in >> w;) natural_words.insert(w);
  }
  const std::set<std::string> real_names(NaturalLexicon().names.begin(), NaturalLexicon().names.end());
  for (const auto& n : a.names) EXPECT_TRUE(real_names.count(n)) << n;
  for (const auto& vp : a.verb_phrases) {
    std::istringstream in(vp);
    std::string verb;
    in >> verb;
    EXPECT_EQ(verb.substr(verb.size() - 3), "ing") << vp;
    EXPECT_FALSE(natural_words.count(verb)) << vp;
    for (std::string w; in >> w;) {
      if (w != "a" && w != "the") EXPECT_FALSE(natural_words.count(w)) << vp;
    }
  }
}

TEST(SamplingTest, DistinctAndDeterministic) {
  const auto interps = SampleInterpretations(NaturalLexicon(), 1000, 42);
  ASSERT_EQ(interps.size(), 1000u);
  for (const auto& it : interps) {
    EXPECT_NE(it.first.subject, it.second.subject);
    EXPECT_NE(it.first.verb_phrase, it.second.verb_phrase);
  }
  EXPECT_EQ(interps, SampleInterpretations(NaturalLexicon(), 1000, 42));
  EXPECT_NE(interps, SampleInterpretations(NaturalLexicon(), 1000, 43));
}

TEST(SamplingTest, TinyLexiconForcesAssignment) {
  Lexicon lex;
  lex.names = {"Ann", "Bob"};
  lex.verb_phrases = {"running", "singing"};
  const auto it = SampleInterpretations(lex, 1, 5).front();
  EXPECT_EQ(std::set<std::string>({it.first.subject, it.second.subject}), std::set<std::string>({"Ann", "Bob"}));
  EXPECT_EQ(std::set<std::string>({it.first.verb_phrase, it.second.verb_phrase}),
            std::set<std::string>({"running", "singing"}));
}

TEST(SamplingTest, RejectsBadArguments) {
  Lexicon lex;
  lex.names = {"Ann"};
  lex.verb_phrases = {"running", "singing"};
  EXPECT_THROW(SampleInterpretations(lex, 1, 0), std::invalid_argument);
  EXPECT_THROW(SampleInterpretations(NaturalLexicon(), 0, 0), std::invalid_argument);
}

TEST(DatasetTest, FullMainDataset) {
  const auto main = SelectFamilies(Catalog(), {Family::kMain24});
  const auto items = BuildDataset(main, SampleInterpretations(NaturalLexicon(), 1000, 42), LexiconKind::kNatural);
  ASSERT_EQ(items.size(), 24000u);
  int yes = 0;
  for (const auto& item : items) {
    yes += item.ground_truth == Answer::kYes;
    EXPECT_EQ(CountLines(item.prompt, "Question: "), 1);
    EXPECT_EQ(std::count(item.prompt.begin(), item.prompt.end(), '\n'), 4);
  }
  EXPECT_EQ(yes, 12000);
  EXPECT_EQ(items[0].item_id, main[0].id + ":0");
  EXPECT_EQ(items[1000].form_id, main[1].id);
}

TEST(DatasetTest, RoundTripAndByteDeterminism) {
  const auto entries = SelectFamilies(Catalog(), {Family::kMain24, Family::kDistribution});
  const auto lex = MakeNonsenseLexicon(50, 50, 9);
  const std::string a = TempPath("ds_a.jsonl");
  const std::string b = TempPath("ds_b.jsonl");
  const auto items = BuildDataset(entries, SampleInterpretations(lex, 5, 1), LexiconKind::kNonsense);
  WriteDataset(items, a);
  WriteDataset(BuildDataset(entries, SampleInterpretations(lex, 5, 1), LexiconKind::kNonsense), b);
  std::ifstream fa(a), fb(b);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(ReadDataset(a), items);
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST(DatasetTest, SingleRecordKeys) {
  const auto item = RealizeQuestion(Catalog().front(), kJaneJohn, LexiconKind::kNatural, "x:0");
  const auto j = nlohmann::ordered_json::parse(ItemToJsonLine(item));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"item_id", "form_id", "modality", "arg_form", "family", "ground_truth",
                                            "prompt", "lexicon_kind", "subjects", "verb_phrases"}));
  EXPECT_EQ(ItemFromJsonLine(ItemToJsonLine(item)), item);
  EXPECT_THROW(ItemFromJsonLine(R"({"item_id":"x"})"), std::invalid_argument);
}

}  // namespace
}  // namespace modalbench
