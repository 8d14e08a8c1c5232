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

#include <filesystem>
#include <random>

#include "modalbench/analysis/analysis.h"
#include "modalbench/eval/client.h"
#include "modalbench/eval/run.h"
#include "modalbench/synthesis/dataset.h"

namespace modalbench {
namespace {

// Every main form with `per_form` observations for each model, scored by `score`.
template <typename Score>
std::vector<Observation> Synthetic(const std::vector<std::string>& models, int per_form, Score score,
                                   std::uint64_t seed = 3) {
  std::mt19937_64 rng(seed);
  std::vector<Observation> out;
  for (const auto& model : models) {
    for (const auto& e : SelectFamilies(BuiltinCatalog(), {Family::kMain24})) {
      for (int i = 0; i < per_form; ++i) {
        Observation o;
        o.model = model;
        o.item_id = e.id + ":" + std::to_string(i);
        o.form_id = e.id;
        o.family = e.family;
        o.modality = e.modality;
        o.arg_form = e.arg_form;
        o.validity = e.label;
        o.lexicon = LexiconKind::kNatural;
        o.perplexity = std::uniform_real_distribution<double>(5, 30)(rng);
        o.soft_score = score(o, rng);
        o.yes_share = o.validity == Answer::kYes ? o.soft_score : 1 - o.soft_score;
        out.push_back(o);
      }
    }
  }
  return out;
}

TEST(AnalysisTest, ArgGroupMapping) {
  EXPECT_EQ(ArgGroupOf(ArgForm::kDisjR, Answer::kYes), ArgGroup::kDisjunctive);
  EXPECT_EQ(ArgGroupOf(ArgForm::kDisjL, Answer::kNo), ArgGroup::kAffirmingDisjunct);
  EXPECT_EQ(ArgGroupOf(ArgForm::kModusPonensL, Answer::kNo), ArgGroup::kAffirmingConsequent);
  EXPECT_EQ(ArgGroupOf(ArgForm::kModusTollensR, Answer::kNo), ArgGroup::kDenyingAntecedent);
  EXPECT_THROW(ArgGroupOf(ArgForm::kBase, Answer::kYes), std::invalid_argument);
}

TEST(AnalysisTest, GroupTableCellsAndMaxima) {
  const auto obs = Synthetic({"m"}, 2, [](const Observation& o, auto&) {
    return o.modality == Modality::kPossibility ? 1.0 : 0.0;
  });
  const auto rows = GroupTable(obs);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].n, 48u);
  EXPECT_DOUBLE_EQ(*rows[0].modality[0], 0.0);
  EXPECT_DOUBLE_EQ(*rows[0].modality[2], 1.0);
  EXPECT_EQ(rows[0].max_modality, "possibility");
  for (const auto& g : rows[0].arg_group) EXPECT_NEAR(*g, 1.0 / 3.0, 1e-12);
}

TEST(AnalysisTest, UniformModelGivesHalfEverywhere) {
  const auto items = BuildDataset(SelectFamilies(BuiltinCatalog(), {Family::kMain24}),
                                  SampleInterpretations(NaturalLexicon(), 2, 1), LexiconKind::kNatural);
  const auto out = (std::filesystem::temp_directory_path() / "modalbench_analysis_uniform.jsonl").string();
  std::filesystem::remove(out);
  UniformMockClient client;
  RunEvaluation(items, client, out, {"uniform", 1});
  const auto rows = GroupTable(ObservationsFromRun(ReadResults(out)));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].overall, 0.5);
  for (const auto& m : rows[0].modality) EXPECT_DOUBLE_EQ(*m, 0.5);
  for (const auto& g : rows[0].arg_group) EXPECT_DOUBLE_EQ(*g, 0.5);
}

double Planted(const Observation& o) {
  double y = 0.6 + 0.004 * *o.perplexity;
  if (o.modality == Modality::kPossibility) y += 0.15;
  if (o.modality == Modality::kNecessity) y -= 0.1;
  const ArgGroup g = ArgGroupOf(o.arg_form, o.validity);
  if (g == ArgGroup::kModusPonens) y += 0.1;
  if (g == ArgGroup::kModusTollens) y -= 0.12;
  return y;
}

TEST(AnalysisTest, AccuracyFitRecoversPlantedEffects) {
  const auto obs = Synthetic({"a", "b"}, 40, [](const Observation& o, std::mt19937_64& rng) {
    return Planted(o) + std::normal_distribution<double>(0, 0.02)(rng) + (o.model == "b" ? 0.05 : 0.0);
  });
  const Fit fit = FitAccuracyModel(obs);
  EXPECT_NEAR(fit.Coef("modality=possibility"), 0.15, 0.01);
  EXPECT_NEAR(fit.Coef("modality=necessity"), -0.1, 0.01);
  EXPECT_NEAR(fit.Coef("arg_group=modus_ponens"), 0.1, 0.01);
  EXPECT_NEAR(fit.Coef("model=b"), 0.05, 0.02);
  const auto contrasts = LogicalFormContrasts(fit);
  ASSERT_EQ(contrasts.size(), 6u);
  // All six planted orderings hold.
  for (const auto& c : contrasts) {
    EXPECT_GT(c.estimate, 0) << c.hypothesis;
    EXPECT_LT(c.p_value, 1e-6) << c.hypothesis;
  }
  EXPECT_NEAR(contrasts[0].estimate, 0.15, 0.01);

  FitOptions means;
  means.per_form_means = true;
  EXPECT_EQ(FitAccuracyModel(obs, means).n, 2u * 12u);
}

TEST(AnalysisTest, AffirmationFitUsesAllMainForms) {
  const auto obs = Synthetic({"a"}, 5, [](const Observation& o, std::mt19937_64& rng) {
    return 0.5 + (o.validity == Answer::kYes ? 0.3 : -0.3) + std::normal_distribution<double>(0, 0.01)(rng);
  });
  const Fit fit = FitAffirmationModel(obs);
  EXPECT_EQ(fit.n, 120u);
  // Fallacies score 0.2, so they are affirmed at 0.8 like the valid forms.
  for (const auto& m : EstimatedMarginalMeans(fit, "arg_group")) EXPECT_NEAR(m.estimate, 0.8, 0.01) << m.level;
}

TEST(AnalysisTest, ConstantPerplexityDropsTheCovariate) {
  auto obs = Synthetic({"a", "b"}, 3, [](const Observation& o, std::mt19937_64& rng) {
    return Planted(o) + std::normal_distribution<double>(0, 0.05)(rng);
  });
  for (auto& o : obs) o.perplexity = 2.0;
  const Fit fit = FitAccuracyModel(obs);
  EXPECT_EQ(fit.warnings.size(), 1u);
  EXPECT_THROW(fit.Coef("perplexity"), std::invalid_argument);
  EXPECT_EQ(LogicalFormContrasts(fit).size(), 6u);
}

TEST(AnalysisTest, MissingPerplexityIsAnError) {
  auto obs = Synthetic({"a"}, 1, [](const Observation&, auto&) { return 0.5; });
  obs[0].perplexity.reset();
  EXPECT_THROW(FitAccuracyModel(obs), FitError);
}

std::vector<HumanObservation> SimulatedHumans(int participants, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<HumanObservation> out;
  const auto forms = SelectFamilies(BuiltinCatalog(), {Family::kMain24});
  for (int p = 0; p < participants; ++p) {
    const double ability = std::normal_distribution<double>(0, 0.3)(rng);
    for (int rep = 0; rep < 4; ++rep) {
      for (const auto& e : forms) {
        HumanObservation h;
        h.participant = "p" + std::to_string(p);
        h.item_id = e.id + ":" + std::to_string(rep);
        h.form_id = e.id;
        h.modality = e.modality;
        h.arg_form = e.arg_form;
        h.validity = e.label;
        h.rt_ms = std::uniform_real_distribution<double>(800, 9000)(rng);
        double eta = 1.0 + ability - 0.1 * h.rt_ms / 1000.0;
        const ArgGroup g = ArgGroupOf(e.arg_form, e.label);
        if (g == ArgGroup::kModusTollens) eta -= 1.2;
        if (g == ArgGroup::kModusPonens) eta += 0.5;
        h.correct = std::bernoulli_distribution(1 / (1 + std::exp(-eta)))(rng);
        out.push_back(h);
      }
    }
  }
  return out;
}

TEST(AnalysisTest, HumanFitDetectsArgumentGroupEffect) {
  const HumanFit fit = FitHumanModel(SimulatedHumans(40, 9));
  EXPECT_TRUE(fit.full.logistic);
  EXPECT_EQ(fit.full.n, 40u * 4u * 12u);
  EXPECT_DOUBLE_EQ(fit.drop_arg_group.df, 2);
  EXPECT_LT(fit.drop_arg_group.p_value, 1e-6);
  EXPECT_LT(fit.full.Coef("arg_group=modus_tollens"), 0);
}

TEST(AnalysisTest, WriteReportsEmitsEveryTable) {
  const auto obs = Synthetic({"a", "b"}, 6, [](const Observation& o, std::mt19937_64& rng) {
    return Planted(o) + std::normal_distribution<double>(0, 0.05)(rng);
  });
  const auto dir = (std::filesystem::temp_directory_path() / "modalbench_reports").string();
  std::filesystem::remove_all(dir);
  const auto files = WriteReports(dir, obs, SimulatedHumans(10, 4), {});
  for (const char* name :
       {"group_table.csv", "accuracy_fit.csv", "accuracy_coefficients.csv", "accuracy_coefficients_standardized.csv",
        "accuracy_emmeans.csv", "accuracy_contrasts.csv", "affirmation_coefficients.csv", "affirmation_emmeans.csv",
        "correlations.csv", "perplexity_by_lexicon.csv", "form_means.csv", "human_coefficients.csv",
        "human_emmeans.csv", "human_lr_test.csv"}) {
    EXPECT_NE(std::find(files.begin(), files.end(), name), files.end()) << name;
    EXPECT_GT(std::filesystem::file_size(std::filesystem::path(dir) / name), 0u) << name;
  }
}

}  // namespace
}  // namespace modalbench
