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

#include <gtest/gtest.h>

#include "support/formula_gen.h"

namespace modalbench {
namespace {

KripkeModel SingleWorld(bool p_true) {
  KripkeModel m;
  m.world_count = 1;
  m.valuation = {p_true ? std::set<std::string>{"p"} : std::set<std::string>{}};
  return m;
}

TEST(EvalTest, VacuousBoxAndEmptyDiamond) {
  const KripkeModel m = SingleWorld(true);
  EXPECT_TRUE(EvalAtWorld(m, 0, Parse("[]p")));
  EXPECT_FALSE(EvalAtWorld(m, 0, Parse("<>p")));
  EXPECT_TRUE(EvalAtWorld(m, 0, Parse("[]~p")));
}

TEST(EvalTest, TwoWorldChain) {
  KripkeModel m;
  m.world_count = 2;
  m.accessibility = {{0, 1}};
  m.valuation = {{}, {"p"}};
  EXPECT_TRUE(EvalAtWorld(m, 0, Parse("[]p")));
  EXPECT_TRUE(EvalAtWorld(m, 0, Parse("<>p")));
  EXPECT_FALSE(EvalAtWorld(m, 0, Parse("p")));
  EXPECT_FALSE(EvalAtWorld(m, 1, Parse("<>p")));
  EXPECT_TRUE(EvalAtWorld(m, 1, Parse("[]~p & [][]q")));
}

TEST(EvalTest, MissingAtomsDefaultFalse) {
  const KripkeModel m = SingleWorld(true);
  EXPECT_FALSE(EvalAtWorld(m, 0, Parse("zeta")));
  EXPECT_TRUE(EvalAtWorld(m, 0, Parse("p & ~zeta")));
}

TEST(EvalTest, DualityOverEnumeratedModels) {
  testing::FormulaGen gen(3, {"p", "q"});
  std::vector<Formula> bodies;
  for (int i = 0; i < 40; ++i) bodies.push_back(gen.Next(3, 1));
  for (std::size_t n = 1; n <= 2; ++n) {
    testing::ForEachModel(n, {"p", "q"}, false, [&](const KripkeModel& m) {
      for (const auto& f : bodies) {
        for (World w = 0; w < n; ++w) {
          ASSERT_EQ(EvalAtWorld(m, w, Formula::Diamond(f)),
                    EvalAtWorld(m, w, Formula::Not(Formula::Box(Formula::Not(f)))));
        }
      }
    });
  }
}

TEST(PrimitiveBasisTest, SemanticsPreservedOnEnumeratedModels) {
  testing::FormulaGen gen(5, {"p", "q"});
  std::vector<Formula> sample;
  for (int i = 0; i < 500; ++i) sample.push_back(gen.Next(4, 2));
  for (std::size_t n = 1; n <= 2; ++n) {
    testing::ForEachModel(n, {"p", "q"}, false, [&](const KripkeModel& m) {
      for (const auto& f : sample) {
        const Formula g = ToPrimitiveBasis(f);
        for (World w = 0; w < n; ++w) ASSERT_EQ(EvalAtWorld(m, w, f), EvalAtWorld(m, w, g)) << Render(f);
      }
    });
  }
}

TEST(ParseSequentTest, PremisesAndConclusion) {
  const Sequent s = ParseSequent("p|q; ~p |- q");
  ASSERT_EQ(s.premises.size(), 2u);
  EXPECT_EQ(s.premises[0], Parse("p | q"));
  EXPECT_EQ(s.premises[1], Parse("~p"));
  EXPECT_EQ(s.conclusion, Parse("q"));
  EXPECT_EQ(FormatSequent(s), "p | q; ~p |- q");
}

TEST(ParseSequentTest, EmptyPremisesAndErrors) {
  EXPECT_TRUE(ParseSequent("|- p | ~p").premises.empty());
  EXPECT_THROW(ParseSequent("p; q"), SyntaxError);
  EXPECT_THROW(ParseSequent("p;; q |- r"), SyntaxError);
  EXPECT_THROW(ParseSequent("p |- q |- r"), SyntaxError);
  try {
    ParseSequent("p; (q |- r");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
}

Verdict DecideText(std::string_view text, ConsequenceMode mode, FrameClass frames) {
  return Decide(ParseSequent(text, mode, frames));
}

constexpr auto kLocal = ConsequenceMode::kLocal;
constexpr auto kGlobal = ConsequenceMode::kGlobal;
constexpr auto kT = FrameClass::kReflexive;
constexpr auto kK = FrameClass::kK;

TEST(DecideTest, DisjunctiveSyllogism) {
  const Verdict v = DecideText("p | q; ~p |- q", kLocal, kT);
  EXPECT_TRUE(v.valid);
  EXPECT_FALSE(v.countermodel.has_value());
}

TEST(DecideTest, AffirmingTheConsequentCountermodel) {
  const Sequent s = ParseSequent("~p -> q; q |- ~p", kLocal, kT);
  const Verdict v = Decide(s);
  ASSERT_FALSE(v.valid);
  ASSERT_TRUE(v.countermodel.has_value());
  const KripkeModel& m = *v.countermodel;
  EXPECT_TRUE(m.IsTrue(m.designated, "p"));
  EXPECT_TRUE(m.IsTrue(m.designated, "q"));
  EXPECT_TRUE(IsCountermodel(s, m));
}

TEST(DecideTest, NecessityDoesNotDistributeOverDisjunction) {
  const Sequent s = ParseSequent("[](p | q); ~[]p |- []q", kLocal, kT);
  const Verdict v = Decide(s);
  ASSERT_FALSE(v.valid);
  EXPECT_TRUE(IsCountermodel(s, *v.countermodel));
}

TEST(DecideTest, NecessitationIsGlobalOnly) {
  EXPECT_TRUE(DecideText("p |- []p", kGlobal, kT).valid);
  const Sequent local = ParseSequent("p |- []p", kLocal, kT);
  const Verdict v = Decide(local);
  ASSERT_FALSE(v.valid);
  EXPECT_TRUE(IsCountermodel(local, *v.countermodel));
  EXPECT_EQ(v.countermodel->world_count, 2u);
}

TEST(DecideTest, PossibilityDistributesOverDisjunction) {
  EXPECT_TRUE(DecideText("<>(p | q); ~<>p |- <>q", kLocal, kT).valid);
  EXPECT_FALSE(DecideText("<>(p | q); <>~p |- <>q", kLocal, kT).valid);
}

TEST(DecideTest, FrameSensitiveSequents) {
  // Axiom T holds on reflexive frames only.
  EXPECT_TRUE(DecideText("[]p |- p", kLocal, kT).valid);
  EXPECT_FALSE(DecideText("[]p |- p", kLocal, kK).valid);
  EXPECT_TRUE(DecideText("p |- <>p", kLocal, kT).valid);
  EXPECT_FALSE(DecideText("p |- <>p", kLocal, kK).valid);
  // Axiom K holds everywhere.
  EXPECT_TRUE(DecideText("[](p -> q); []p |- []q", kLocal, kK).valid);
}

TEST(DecideTest, GlobalAssumptionsPropagate) {
  // A global <>p forces an infinite (or cyclic) chain of p-successors.
  EXPECT_TRUE(DecideText("<>p |- <><><>p", kGlobal, kK).valid);
  EXPECT_FALSE(DecideText("<>p |- <><><>p & p", kGlobal, kK).valid);
  EXPECT_FALSE(DecideText("<>p |- <><>q", kGlobal, kK).valid);
  // Locally, nothing constrains the successors.
  EXPECT_FALSE(DecideText("<>p |- <><>p", kLocal, kK).valid);
}

TEST(DecideTest, GlobalCountermodelsHonourPremisesEverywhere) {
  const Sequent s = ParseSequent("p -> <>q; q -> []p |- p -> <>p", kGlobal, kK);
  const Verdict v = Decide(s);
  if (!v.valid) EXPECT_TRUE(IsCountermodel(s, *v.countermodel));
  EXPECT_EQ(v.valid, BruteForceOracle(s, 4).valid);
}

TEST(DecideTest, ResourceLimit) {
  // 5 atoms + 5 boxes = 1024 candidate types.
  const Sequent s = ParseSequent("[]a; []b; []c |- []d | []e");
  ProverOptions tight;
  tight.max_types = 512;
  EXPECT_THROW(Decide(s, tight), ResourceLimitExceeded);
  EXPECT_NO_THROW(Decide(s));
}

TEST(DecideTest, RejectsMetavariables) {
  Sequent s{{}, ParseTemplate("$phi").tree()};
  EXPECT_THROW(Decide(s), std::invalid_argument);
}

TEST(OracleTest, Examples) {
  EXPECT_TRUE(BruteForceOracle(ParseSequent("<>(p | q); ~<>p |- <>q", kLocal, kT), 5).valid);
  const Sequent s = ParseSequent("<>(p | q); <>~p |- <>q", kLocal, kT);
  const Verdict v = BruteForceOracle(s, 5);
  ASSERT_FALSE(v.valid);
  EXPECT_TRUE(IsCountermodel(s, *v.countermodel));
  EXPECT_TRUE(BruteForceOracle(ParseSequent("|- p | ~p", kLocal, kK), 1).valid);
}

TEST(OracleTest, FindsSmallestCountermodelFirst) {
  const Verdict v = BruteForceOracle(ParseSequent("p |- []p", kLocal, kT), 5);
  ASSERT_FALSE(v.valid);
  EXPECT_EQ(v.countermodel->world_count, 2u);
}

TEST(OracleTest, RejectsZeroWorlds) { EXPECT_THROW(BruteForceOracle(ParseSequent("|- p"), 0), std::invalid_argument); }

TEST(OracleTest, DeterministicCountermodel) {
  const Sequent s = ParseSequent("<>p; <>q |- <>(p & q)", kLocal, kK);
  const Verdict a = BruteForceOracle(s, 5);
  const Verdict b = BruteForceOracle(s, 5);
  ASSERT_FALSE(a.valid);
  EXPECT_EQ(FormatModel(*a.countermodel), FormatModel(*b.countermodel));
}

TEST(OracleTest, DeeperFormulasUseFullSearch) {
  // Depth 2 exercises the backtracking path without the shallow shortcut.
  const Sequent s = ParseSequent("[][]p |- []p", kLocal, kK);
  EXPECT_FALSE(BruteForceOracle(s, 3).valid);
  EXPECT_FALSE(Decide(s).valid);
  EXPECT_TRUE(BruteForceOracle(ParseSequent("[][]p |- [][](p | q)", kLocal, kK), 3).valid);
}

// Small-scale agreement sweep; the acceptance suite runs the full one.
TEST(AgreementTest, DecideMatchesOracleOnFuzzedSequents) {
  testing::FormulaGen gen(99, {"p", "q"});
  for (int i = 0; i < 120; ++i) {
    Sequent s = gen.NextSequent(3, 1, 2);
    for (auto mode : {kLocal, kGlobal}) {
      for (auto frames : {kK, kT}) {
        s.mode = mode;
        s.frames = frames;
        const Verdict d = Decide(s);
        const Verdict o = BruteForceOracle(s, 5);
        ASSERT_EQ(d.valid, o.valid) << FormatSequent(s) << " " << ConsequenceModeName(mode) << "/"
                                    << FrameClassName(frames);
        if (!d.valid) {
          EXPECT_TRUE(IsCountermodel(s, *d.countermodel));
          EXPECT_TRUE(IsCountermodel(s, *o.countermodel));
        }
      }
    }
  }
}

TEST(AgreementTest, ModeAndFrameMonotonicity) {
  testing::FormulaGen gen(123, {"p", "q"});
  for (int i = 0; i < 200; ++i) {
    Sequent s = gen.NextSequent(3, 2, 2);
    s.mode = kLocal;
    s.frames = kK;
    const bool local_k = Decide(s).valid;
    s.frames = kT;
    const bool local_t = Decide(s).valid;
    s.mode = kGlobal;
    const bool global_t = Decide(s).valid;
    s.frames = kK;
    const bool global_k = Decide(s).valid;
    if (local_k) {
      EXPECT_TRUE(local_t) << FormatSequent(s);
      EXPECT_TRUE(global_k) << FormatSequent(s);
    }
    if (local_t) EXPECT_TRUE(global_t) << FormatSequent(s);
    if (global_k) EXPECT_TRUE(global_t) << FormatSequent(s);
  }
}

TEST(KripkeModelTest, WellFormedness) {
  KripkeModel m;
  m.world_count = 2;
  m.accessibility = {{0, 0}, {1, 1}, {0, 1}};
  EXPECT_TRUE(m.IsWellFormed(kT));
  m.accessibility.erase({1, 1});
  EXPECT_FALSE(m.IsWellFormed(kT));
  EXPECT_TRUE(m.IsWellFormed(kK));
  m.designated = 2;
  EXPECT_FALSE(m.IsWellFormed(kK));
}

TEST(KripkeModelTest, FormatListsWorldsEdgesAndAtoms) {
  KripkeModel m;
  m.world_count = 2;
  m.accessibility = {{0, 1}};
  m.valuation = {{"p"}, {}};
  EXPECT_EQ(FormatModel(m), "worlds: 2 (designated w0)\n  w0: p\n  w1: (no atoms true)\nedges: w0->w1\n");
}

}  // namespace
}  // namespace modalbench
