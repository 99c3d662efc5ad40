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

// Man-in-the-middle strategies against the pairing protocol and the
// machinery to measure how often they succeed.
//
// Every trial runs two honest sessions (A initiates, B responds) over an
// interposed channel. The attacker is an interposer, so it sees frames only
// as they are sent and must emit its own commitment before A's decommitment
// exists. Honest users are modelled as perfect comparators: both confirm iff
// S_A == S_B.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "saska/group.h"
#include "saska/sas.h"
#include "saska/transport.h"

namespace saska {

enum class AttackKind {
  // No attacker; measures completeness.
  kHonest,
  // Replaces c_A with its own commitment to ID_A | g^e | N_E, substitutes
  // g^e into m_B, and opens its own commitment to B. Wins iff N_E == N_A.
  kImpersonateInitiator,
  // Commits toward B first, then answers A with ID_B | g^e | N_E where N_E is
  // chosen after seeing N_B. Wins iff its guess of N_A is right.
  kImpersonateResponder,
  // Runs complete protocol sessions with both victims and bridges them.
  // The adaptive rule tries to reopen its commitment to B after learning
  // N_A, which the commitment rejects.
  kFullMitm,
  // Forwards A's commitment and decommitment untouched and swaps only the
  // public share inside m_B. Both users see N_A xor N_B.
  kRelayShareSwap,
};

enum class GuessRule {
  kFixed,     // a constant guess for N_A
  kUniform,   // drawn from the attacker's randomness before anything is seen
  kAdaptive,  // derived from frames observed so far (see AttackKind)
};

struct AttackStrategy {
  AttackKind kind = AttackKind::kImpersonateResponder;
  GuessRule guess_rule = GuessRule::kFixed;
  std::uint64_t fixed_guess = 0;  // masked to k bits
};

std::string_view AttackKindName(AttackKind kind);
std::optional<AttackKind> ParseAttackKind(std::string_view name);
std::string_view GuessRuleName(GuessRule rule);
std::optional<GuessRule> ParseGuessRule(std::string_view name);
std::vector<AttackKind> AllAttackKinds();

struct AttackOutcome {
  // Honest kind: the run completed with equal SAS and equal keys.
  // Otherwise: equal SAS on both sides and the attacker shares a key with at
  // least one victim.
  bool success = false;
  bool sas_match = false;
  bool attacker_keyed = false;
  std::optional<Sas> sas_a;
  std::optional<Sas> sas_b;
  std::optional<AuthNonce> nonce_a;
  std::optional<SessionKey> key_a;
  std::optional<SessionKey> key_b;
  std::vector<TranscriptEvent> transcript;
};

// Pins parts of a trial; used for exhaustive enumeration and tests.
struct TrialOverrides {
  std::optional<AuthNonce> initiator_nonce;
  std::optional<PrivateShare> initiator_share;
  std::optional<PrivateShare> responder_share;
};

AttackOutcome RunHonestSession(const DhParams& params, int sas_bits,
                               std::uint64_t seed);

AttackOutcome RunMitmTrial(const AttackStrategy& strategy,
                           const DhParams& params, int sas_bits,
                           std::uint64_t seed,
                           const TrialOverrides& overrides = {});

inline constexpr int kMaxExhaustiveBits = 16;

struct ExactFraction {
  std::uint64_t successes = 0;
  std::uint64_t total = 0;

  double value() const {
    return total == 0 ? 0.0 : static_cast<double>(successes) / total;
  }
  // successes / total <= 2^-k, compared exactly.
  bool AtMostTwoToMinus(int bits) const {
    return (static_cast<unsigned __int128>(successes) << bits) <= total;
  }
  bool EqualsTwoToMinus(int bits) const {
    return (static_cast<unsigned __int128>(successes) << bits) == total;
  }
};

// Runs one trial for each of the 2^k values of N_A with every other random
// input held fixed. Throws kKTooLarge for k > 16, and kInvalidArgument for an
// adaptive guess on the impersonation kinds, whose guess would then vary
// with the enumerated nonce.
ExactFraction ExhaustiveAttackSuccess(const AttackStrategy& strategy,
                                      const DhParams& params, int sas_bits,
                                      std::uint64_t seed = 0);

struct RateEstimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double rate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

inline constexpr double kDefaultConfidence = 0.99;
inline constexpr std::uint64_t kMinAttackTrials = 1000;

// Two-sided Clopper-Pearson interval.
RateEstimate BinomialEstimate(std::uint64_t successes, std::uint64_t trials,
                              double confidence = kDefaultConfidence);

// Monte Carlo over independent trial seeds derived from `seed`. Attack
// kinds need at least 1000 trials; the honest kind accepts any positive
// count. Results do not depend on `threads`.
RateEstimate EstimateAttackSuccess(const AttackStrategy& strategy,
                                   const DhParams& params, int sas_bits,
                                   std::uint64_t trials, std::uint64_t seed,
                                   unsigned threads = 1);

enum class SimMode { kExhaustive, kMonteCarlo };

struct SimReport {
  AttackStrategy strategy;
  SimMode mode = SimMode::kMonteCarlo;
  int sas_bits = kDefaultSasBits;
  RateEstimate estimate;
  double bound = 0.0;
  bool pass = false;
};

// Exhaustive: pass iff the exact fraction is at most 2^-k. Monte Carlo: pass
// iff the lower confidence bound does not exceed 2^-k. Honest: pass iff every
// trial succeeded.
SimReport MakeExhaustiveReport(const AttackStrategy& strategy, int sas_bits,
                               const ExactFraction& fraction);
SimReport MakeMonteCarloReport(const AttackStrategy& strategy, int sas_bits,
                               const RateEstimate& estimate);

std::string FormatReportTable(const std::vector<SimReport>& reports);
std::string FormatReportKeyValue(const SimReport& report);

}  // namespace saska
