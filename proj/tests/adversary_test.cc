// Copyright 2026 The saska Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "saska/adversary.h"

#include <gtest/gtest.h>

#include <cmath>

#include "saska/error.h"
#include "saska/params.h"
#include "saska/wire.h"
#include "test_util.h"

namespace saska {
namespace {

using testing::TestParams;

template <typename F>
Errc ErrorOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kInvalidArgument;
}

AttackStrategy Strategy(AttackKind kind, GuessRule rule, std::uint64_t guess = 0) {
  return AttackStrategy{kind, rule, guess};
}

const AttackKind kBoundedKinds[] = {AttackKind::kImpersonateInitiator,
                                    AttackKind::kImpersonateResponder,
                                    AttackKind::kFullMitm};

TEST(HonestRunTest, CompletesWithEqualKeys) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    AttackOutcome o = RunHonestSession(TestParams(), 20, seed);
    ASSERT_TRUE(o.success) << seed;
    ASSERT_EQ(*o.sas_a, *o.sas_b);
    ASSERT_EQ(o.key_a->value, o.key_b->value);
    ASSERT_FALSE(o.attacker_keyed);
  }
  AttackOutcome d = RunHonestSession(BuiltinParams(kD2dParamSet), 20, 7);
  EXPECT_TRUE(d.success);
  EXPECT_NE(RunHonestSession(TestParams(), 20, 1).sas_a,
            RunHonestSession(TestParams(), 20, 2).sas_a);
}

TEST(MitmTrialTest, ImpersonateResponderWinsOnlyWithCorrectGuess) {
  const int k = 8;
  for (std::uint64_t n_a = 0; n_a < 256; n_a += 17) {
    for (std::uint64_t guess : {n_a, n_a ^ 1, n_a ^ 0x80}) {
      TrialOverrides pin{AuthNonce::FromValue(k, n_a), {}, {}};
      AttackOutcome o = RunMitmTrial(
          Strategy(AttackKind::kImpersonateResponder, GuessRule::kFixed, guess),
          TestParams(), k, 5, pin);
      ASSERT_EQ(o.success, guess == n_a);
      // S_A xor S_B = G xor N_A regardless of anything else.
      ASSERT_EQ(o.sas_a->value() ^ o.sas_b->value(), guess ^ n_a);
      if (guess != n_a) {
        ASSERT_FALSE(o.key_a);
        ASSERT_FALSE(o.key_b);
      }
    }
  }
}

TEST(MitmTrialTest, ImpersonateInitiatorWinsOnlyWithCorrectGuess) {
  const int k = 6;
  for (std::uint64_t n_a = 0; n_a < 64; ++n_a) {
    TrialOverrides pin{AuthNonce::FromValue(k, n_a), {}, {}};
    AttackOutcome o = RunMitmTrial(
        Strategy(AttackKind::kImpersonateInitiator, GuessRule::kFixed, 9),
        TestParams(), k, 3, pin);
    ASSERT_EQ(o.success, n_a == 9) << n_a;
  }
}

TEST(MitmTrialTest, AdaptiveFullMitmCannotReopenCommitment) {
  int open_failures = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    AttackOutcome o = RunMitmTrial(
        Strategy(AttackKind::kFullMitm, GuessRule::kAdaptive), TestParams(), 8, seed);
    for (const TranscriptEvent& e : o.transcript) {
      if (e.kind == EventKind::kNote && e.note.find("responder") == 0 &&
          e.note.find("commitment") != std::string::npos) {
        ++open_failures;
      }
    }
    if (!o.success) {
      EXPECT_FALSE(o.key_b);
    }
  }
  EXPECT_GE(open_failures, 45);
}

TEST(MitmTrialTest, RelayShareSwapDefeatsComparison) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    AttackOutcome o = RunMitmTrial(
        Strategy(AttackKind::kRelayShareSwap, GuessRule::kFixed), TestParams(), 20, seed);
    ASSERT_TRUE(o.sas_match);
    ASSERT_TRUE(o.attacker_keyed);
    ASSERT_TRUE(o.success);
  }
  ExactFraction f = ExhaustiveAttackSuccess(
      Strategy(AttackKind::kRelayShareSwap, GuessRule::kFixed), TestParams(), 4);
  EXPECT_EQ(f.successes, f.total);
  EXPECT_FALSE(MakeExhaustiveReport(Strategy(AttackKind::kRelayShareSwap, GuessRule::kFixed),
                                    4, f)
                   .pass);
}

TEST(ExhaustiveTest, ExactFractions) {
  const AttackStrategy s = Strategy(AttackKind::kImpersonateResponder, GuessRule::kFixed);
  ExactFraction k1 = ExhaustiveAttackSuccess(s, TestParams(), 1);
  EXPECT_EQ(k1.total, 2u);
  EXPECT_EQ(k1.successes, 1u);
  ExactFraction k3 = ExhaustiveAttackSuccess(s, TestParams(), 3);
  EXPECT_EQ(k3.total, 8u);
  EXPECT_EQ(k3.successes, 1u);
  EXPECT_DOUBLE_EQ(k3.value(), 0.125);
  ExactFraction k8 = ExhaustiveAttackSuccess(s, TestParams(), 8);
  EXPECT_EQ(k8.total, 256u);
  EXPECT_EQ(k8.successes, 1u);
}

TEST(ExhaustiveTest, BoundHoldsForEveryAnalysedStrategy) {
  for (AttackKind kind : kBoundedKinds) {
    for (GuessRule rule : {GuessRule::kFixed, GuessRule::kUniform, GuessRule::kAdaptive}) {
      if (rule == GuessRule::kAdaptive && kind != AttackKind::kFullMitm) continue;
      for (int k = 1; k <= 6; ++k) {
        for (std::uint64_t seed : {0u, 1u, 2u}) {
          ExactFraction f = ExhaustiveAttackSuccess(Strategy(kind, rule, 5), TestParams(), k, seed);
          ASSERT_EQ(f.total, std::uint64_t{1} << k);
          ASSERT_TRUE(f.AtMostTwoToMinus(k))
              << AttackKindName(kind) << " " << GuessRuleName(rule) << " k=" << k
              << " successes=" << f.successes;
          if (kind != AttackKind::kFullMitm) {
            ASSERT_TRUE(f.EqualsTwoToMinus(k)) << AttackKindName(kind) << " k=" << k;
          }
        }
      }
    }
  }
}

TEST(ExhaustiveTest, RejectsUnsupportedRequests) {
  const AttackStrategy s = Strategy(AttackKind::kImpersonateResponder, GuessRule::kFixed);
  EXPECT_EQ(ErrorOf([&] { ExhaustiveAttackSuccess(s, TestParams(), 17); }), Errc::kKTooLarge);
  EXPECT_EQ(ErrorOf([&] {
              ExhaustiveAttackSuccess(
                  Strategy(AttackKind::kImpersonateInitiator, GuessRule::kAdaptive),
                  TestParams(), 4);
            }),
            Errc::kInvalidArgument);
  EXPECT_EQ(ErrorOf([&] { ExhaustiveAttackSuccess(s, TestParams(), 0); }),
            Errc::kInvalidArgument);
}

TEST(BinomialEstimateTest, MatchesReferenceIntervals) {
  // Two-sided 99% Clopper-Pearson bounds from beta quantiles.
  RateEstimate a = BinomialEstimate(391, 100000);
  EXPECT_NEAR(a.ci_low, 0.00342027619862863, 1e-12);
  EXPECT_NEAR(a.ci_high, 0.004447553664221507, 1e-12);
  EXPECT_DOUBLE_EQ(a.rate, 0.00391);
  RateEstimate b = BinomialEstimate(5, 1000);
  EXPECT_NEAR(b.ci_low, 0.001079506609804738, 1e-12);
  EXPECT_NEAR(b.ci_high, 0.01408514817525056, 1e-12);
  RateEstimate z = BinomialEstimate(0, 100000);
  EXPECT_EQ(z.ci_low, 0.0);
  EXPECT_NEAR(z.ci_high, 5.298177008195015e-05, 1e-15);
  RateEstimate all = BinomialEstimate(10, 10);
  EXPECT_EQ(all.ci_high, 1.0);
  EXPECT_THROW(BinomialEstimate(3, 2), Error);
  EXPECT_THROW(BinomialEstimate(0, 0), Error);
}

TEST(MonteCarloTest, IntervalsCoverTheExactRate) {
  const AttackStrategy s = Strategy(AttackKind::kImpersonateResponder, GuessRule::kUniform);
  const double exact = 1.0 / 64;
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RateEstimate e = EstimateAttackSuccess(s, TestParams(), 6, 1000, 1000 + seed);
    if (e.ci_low <= exact && exact <= e.ci_high) ++covered;
  }
  EXPECT_GE(covered, 38);
}

TEST(MonteCarloTest, LargeRunIntervalContainsTwoToMinusEight) {
  const AttackStrategy s = Strategy(AttackKind::kImpersonateResponder, GuessRule::kUniform);
  RateEstimate e = EstimateAttackSuccess(s, TestParams(), 8, 100000, 1);
  EXPECT_LE(e.ci_low, 1.0 / 256);
  EXPECT_GE(e.ci_high, 1.0 / 256);
  EXPECT_EQ(e.trials, 100000u);
}

TEST(MonteCarloTest, TrialCountRules) {
  const AttackStrategy s = Strategy(AttackKind::kImpersonateResponder, GuessRule::kUniform);
  EXPECT_EQ(ErrorOf([&] { EstimateAttackSuccess(s, TestParams(), 8, 999, 1); }),
            Errc::kInvalidArgument);
  RateEstimate honest =
      EstimateAttackSuccess(Strategy(AttackKind::kHonest, GuessRule::kUniform), TestParams(), 20, 100, 1);
  EXPECT_EQ(honest.successes, 100u);
  EXPECT_EQ(honest.rate, 1.0);
}

TEST(MonteCarloTest, LongSasKeepsAttackerOut) {
  const AttackStrategy s = Strategy(AttackKind::kImpersonateResponder, GuessRule::kUniform);
  RateEstimate e = EstimateAttackSuccess(s, TestParams(), 20, 100000, 3, 4);
  EXPECT_LE(e.rate, 5e-5);
  EXPECT_LE(e.ci_low, std::ldexp(1.0, -20));
}

TEST(MonteCarloTest, IndependentOfThreadCount) {
  const AttackStrategy s = Strategy(AttackKind::kFullMitm, GuessRule::kUniform);
  RateEstimate one = EstimateAttackSuccess(s, TestParams(), 4, 2000, 9, 1);
  RateEstimate four = EstimateAttackSuccess(s, TestParams(), 4, 2000, 9, 4);
  EXPECT_EQ(one.successes, four.successes);
}

TEST(TranscriptTest, DeterministicForFixedSeed) {
  for (AttackKind kind : AllAttackKinds()) {
    AttackStrategy s = Strategy(kind, GuessRule::kUniform);
    AttackOutcome x = RunMitmTrial(s, TestParams(), 8, 77);
    AttackOutcome y = RunMitmTrial(s, TestParams(), 8, 77);
    EXPECT_EQ(x.transcript, y.transcript) << AttackKindName(kind);
    EXPECT_EQ(x.success, y.success);
  }
}

TEST(TranscriptTest, AttackerCommitsBeforeDecommitmentIsSent) {
  for (AttackKind kind : kBoundedKinds) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      AttackOutcome o = RunMitmTrial(Strategy(kind, GuessRule::kUniform), TestParams(), 8, seed);
      std::optional<std::size_t> commit_to_b, reveal_by_a;
      for (const TranscriptEvent& e : o.transcript) {
        if (e.kind == EventKind::kSent || e.kind == EventKind::kNote || e.frame.empty()) {
          if (e.kind == EventKind::kSent && e.direction == Direction::kAtoB &&
              e.frame[0] == 0x03 && !reveal_by_a) {
            reveal_by_a = e.seq;
          }
          continue;
        }
        if (e.direction == Direction::kAtoB && e.frame[0] == 0x01 && !commit_to_b) {
          commit_to_b = e.seq;
        }
      }
      ASSERT_TRUE(commit_to_b && reveal_by_a);
      EXPECT_LT(*commit_to_b, *reveal_by_a) << AttackKindName(kind);
    }
  }
}

TEST(ReportTest, Formatting) {
  const AttackStrategy s = Strategy(AttackKind::kImpersonateResponder, GuessRule::kFixed);
  SimReport ex = MakeExhaustiveReport(s, 3, ExactFraction{1, 8});
  EXPECT_TRUE(ex.pass);
  std::string kv = FormatReportKeyValue(ex);
  EXPECT_EQ(testing::Field(kv, "strategy"), "impersonate-responder");
  EXPECT_EQ(testing::Field(kv, "mode"), "exhaustive");
  EXPECT_EQ(testing::Field(kv, "rate"), "0.125");
  EXPECT_EQ(testing::Field(kv, "result"), "pass");
  EXPECT_FALSE(MakeExhaustiveReport(s, 3, ExactFraction{2, 8}).pass);

  SimReport mc = MakeMonteCarloReport(s, 8, BinomialEstimate(391, 100000));
  EXPECT_TRUE(mc.pass);
  EXPECT_FALSE(MakeMonteCarloReport(s, 8, BinomialEstimate(600, 100000)).pass);
  std::string table = FormatReportTable({ex, mc});
  EXPECT_NE(table.find("impersonate-responder"), std::string::npos);
  EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 3);
}

TEST(NamesTest, RoundTrip) {
  for (AttackKind kind : AllAttackKinds()) {
    EXPECT_EQ(ParseAttackKind(AttackKindName(kind)), kind);
  }
  for (GuessRule rule : {GuessRule::kFixed, GuessRule::kUniform, GuessRule::kAdaptive}) {
    EXPECT_EQ(ParseGuessRule(GuessRuleName(rule)), rule);
  }
  EXPECT_FALSE(ParseAttackKind("nope"));
  EXPECT_EQ(AllAttackKinds().size(), 5u);
}

}  // namespace
}  // namespace saska
