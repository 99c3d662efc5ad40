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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include <boost/math/distributions/binomial.hpp>

#include "saska/commitment.h"
#include "saska/error.h"
#include "saska/params.h"
#include "saska/session.h"
#include "saska/wire.h"

namespace saska {

std::string_view AttackKindName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kHonest: return "honest";
    case AttackKind::kImpersonateInitiator: return "impersonate-initiator";
    case AttackKind::kImpersonateResponder: return "impersonate-responder";
    case AttackKind::kFullMitm: return "full-mitm";
    case AttackKind::kRelayShareSwap: return "relay-share-swap";
  }
  return "unknown";
}

std::vector<AttackKind> AllAttackKinds() {
  return {AttackKind::kHonest, AttackKind::kImpersonateInitiator,
          AttackKind::kImpersonateResponder, AttackKind::kFullMitm,
          AttackKind::kRelayShareSwap};
}

std::optional<AttackKind> ParseAttackKind(std::string_view name) {
  for (AttackKind kind : AllAttackKinds()) {
    if (AttackKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string_view GuessRuleName(GuessRule rule) {
  switch (rule) {
    case GuessRule::kFixed: return "fixed";
    case GuessRule::kUniform: return "uniform";
    case GuessRule::kAdaptive: return "adaptive";
  }
  return "unknown";
}

std::optional<GuessRule> ParseGuessRule(std::string_view name) {
  for (GuessRule rule :
       {GuessRule::kFixed, GuessRule::kUniform, GuessRule::kAdaptive}) {
    if (GuessRuleName(rule) == name) return rule;
  }
  return std::nullopt;
}

namespace {

const Identity& VictimA() {
  static const Identity id("alice");
  return id;
}

const Identity& VictimB() {
  static const Identity id("bob");
  return id;
}

struct AttackContext {
  const DhParams& params;
  int sas_bits;
  AttackStrategy strategy;
  SeededRandom rng;
  std::shared_ptr<Transcript> transcript;
};

class Attacker {
 public:
  explicit Attacker(AttackContext ctx) : ctx_(std::move(ctx)) {
    // A uniform guess is drawn before any frame exists.
    uniform_guess_ = ctx_.rng.NextU64() & AuthNonce::Mask(ctx_.sas_bits);
  }
  virtual ~Attacker() = default;

  Verdict OnFrame(Direction dir, ByteView frame, const Transcript& log) {
    try {
      switch (FrameType(frame)) {
        case MessageType::kCommit:
          if (dir == Direction::kAtoB) return OnCommit(frame, log);
          break;
        case MessageType::kPayload:
          if (dir == Direction::kBtoA) return OnPayload(frame, log);
          break;
        case MessageType::kDecommit:
          if (dir == Direction::kAtoB) return OnDecommit(frame, log);
          break;
      }
    } catch (const Error& e) {
      Note(std::string("attacker: ") + e.what());
    }
    return Deliver{};
  }

  const std::optional<SessionKey>& key_with_a() const { return key_with_a_; }
  const std::optional<SessionKey>& key_with_b() const { return key_with_b_; }

 protected:
  virtual Verdict OnCommit(ByteView frame, const Transcript& log) = 0;
  virtual Verdict OnPayload(ByteView frame, const Transcript& log) = 0;
  virtual Verdict OnDecommit(ByteView frame, const Transcript& log) = 0;

  // The attacker's guess for N_A, from whatever has been observed so far.
  AuthNonce Guess(const Transcript& log) const {
    const int k = ctx_.sas_bits;
    switch (ctx_.strategy.guess_rule) {
      case GuessRule::kFixed:
        return AuthNonce::FromValue(
            k, ctx_.strategy.fixed_guess & AuthNonce::Mask(k));
      case GuessRule::kUniform:
        return AuthNonce::FromValue(k, uniform_guess_);
      case GuessRule::kAdaptive: {
        Sha256Stream h;
        for (const TranscriptEvent& e : log.Events()) {
          if (e.kind == EventKind::kSent) h.Update(e.frame);
        }
        Digest d = h.Final();
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v = (v << 8) | d[static_cast<std::size_t>(i)];
        return AuthNonce::FromValue(k, v & AuthNonce::Mask(k));
      }
    }
    Throw(Errc::kInvalidArgument, "unknown guess rule");
  }

  PrivateShare NewShare() { return GenPrivateShare(ctx_.params, ctx_.rng); }
  PublicShare ShareOf(const PrivateShare& s) const {
    return PubShare(ctx_.params, s);
  }
  std::uint32_t ParamId() const { return ParamSetId(ctx_.params); }

  // Opens the victim's commitment with the victim's decommitment.
  PairingPayload OpenVictim(const Commitment& c, ByteView msg3) const {
    Msg3 m = std::get<Msg3>(DecodeFrame(msg3));
    return DecodePayloadFields(Open(c, m.decommitment), ctx_.sas_bits);
  }

  void Note(std::string text) {
    if (ctx_.transcript) ctx_.transcript->Note(std::move(text));
  }

  static Commitment CommitmentOf(ByteView msg1) {
    return std::get<Msg1>(DecodeFrame(msg1)).commitment;
  }
  static Msg2 PayloadOf(ByteView msg2) {
    return std::get<Msg2>(DecodeFrame(msg2));
  }

  AttackContext ctx_;
  std::uint64_t uniform_guess_ = 0;
  std::optional<SessionKey> key_with_a_;
  std::optional<SessionKey> key_with_b_;
};

// Commits to ID_A | g^e | N_E toward B, where N_E is its guess of N_A.
class ImpersonateInitiator final : public Attacker {
 public:
  using Attacker::Attacker;

 protected:
  Verdict OnCommit(ByteView frame, const Transcript& log) override {
    victim_commitment_ = CommitmentOf(frame);
    share_ = NewShare();
    PairingPayload fake{VictimA(), ShareOf(*share_), Guess(log)};
    CommitPair pair = Commit(EncodePayloadFields(fake), ctx_.rng);
    own_opening_ = pair.decommitment;
    return Replace{EncodeFrame(Msg1{pair.commitment})};
  }

  Verdict OnPayload(ByteView frame, const Transcript&) override {
    Msg2 m = PayloadOf(frame);
    key_with_b_ = DeriveKey(ctx_.params, m.payload.public_share, *share_);
    m.payload.public_share = ShareOf(*share_);
    return Replace{EncodeFrame(m)};
  }

  Verdict OnDecommit(ByteView frame, const Transcript&) override {
    PairingPayload m_a = OpenVictim(*victim_commitment_, frame);
    key_with_a_ = DeriveKey(ctx_.params, m_a.public_share, *share_);
    return Replace{EncodeFrame(Msg3{*own_opening_})};
  }

 private:
  std::optional<Commitment> victim_commitment_;
  std::optional<PrivateShare> share_;
  std::optional<Decommitment> own_opening_;
};

// Commits to a random N_E' toward B, then after seeing N_B answers A with
// N_E = guess ^ N_E' ^ N_B, so S_A == S_B exactly when the guess equals N_A.
class ImpersonateResponder final : public Attacker {
 public:
  using Attacker::Attacker;

 protected:
  Verdict OnCommit(ByteView frame, const Transcript&) override {
    victim_commitment_ = CommitmentOf(frame);
    share_ = NewShare();
    committed_nonce_ = AuthNonce::Random(ctx_.sas_bits, ctx_.rng);
    PairingPayload fake{VictimA(), ShareOf(*share_), *committed_nonce_};
    CommitPair pair = Commit(EncodePayloadFields(fake), ctx_.rng);
    own_opening_ = pair.decommitment;
    return Replace{EncodeFrame(Msg1{pair.commitment})};
  }

  Verdict OnPayload(ByteView frame, const Transcript& log) override {
    Msg2 m = PayloadOf(frame);
    key_with_b_ = DeriveKey(ctx_.params, m.payload.public_share, *share_);
    const std::uint64_t reply = Guess(log).value() ^
                                committed_nonce_->value() ^
                                m.payload.auth_nonce.value();
    PairingPayload fake{VictimB(), ShareOf(*share_),
                        AuthNonce::FromValue(ctx_.sas_bits, reply)};
    return Replace{EncodeFrame(Msg2{m.param_set_id, fake})};
  }

  Verdict OnDecommit(ByteView frame, const Transcript&) override {
    PairingPayload m_a = OpenVictim(*victim_commitment_, frame);
    key_with_a_ = DeriveKey(ctx_.params, m_a.public_share, *share_);
    return Replace{EncodeFrame(Msg3{*own_opening_})};
  }

 private:
  std::optional<Commitment> victim_commitment_;
  std::optional<PrivateShare> share_;
  std::optional<AuthNonce> committed_nonce_;
  std::optional<Decommitment> own_opening_;
};

// Two genuine protocol sessions: initiator toward B (posing as A) and
// responder toward A (posing as B), echoing N_B to A.
class FullMitm final : public Attacker {
 public:
  using Attacker::Attacker;

 protected:
  bool equivocate() const {
    return ctx_.strategy.guess_rule == GuessRule::kAdaptive;
  }

  Verdict OnCommit(ByteView frame, const Transcript& log) override {
    victim_msg1_.assign(frame.begin(), frame.end());
    AuthNonce nonce = equivocate() ? AuthNonce::Random(ctx_.sas_bits, ctx_.rng)
                                   : Guess(log);
    auto [session, msg1] = Session::StartInitiator(
        SessionConfig{ctx_.params, VictimA(), ctx_.sas_bits}, ctx_.rng,
        Ephemeral{NewShare(), nonce});
    toward_b_.emplace(std::move(session));
    return Replace{std::move(msg1)};
  }

  Verdict OnPayload(ByteView frame, const Transcript&) override {
    Session::PayloadResult r = toward_b_->OnPayload(frame);
    own_msg3_ = std::move(r.msg3);
    const AuthNonce& n_b = toward_b_->remote_payload()->auth_nonce;
    auto [session, msg2] = Session::RespondToCommit(
        SessionConfig{ctx_.params, VictimB(), ctx_.sas_bits}, ctx_.rng,
        victim_msg1_, Ephemeral{NewShare(), n_b});
    toward_a_.emplace(std::move(session));
    return Replace{std::move(msg2)};
  }

  Verdict OnDecommit(ByteView frame, const Transcript&) override {
    toward_a_->OnDecommit(frame);
    key_with_a_ = toward_a_->Confirm(true);
    key_with_b_ = toward_b_->Confirm(true);
    if (!equivocate()) return Replace{own_msg3_};

    // Now that N_A is known, try to open the commitment sent to B as if it
    // had held N_A all along.
    Msg3 sent = std::get<Msg3>(DecodeFrame(own_msg3_));
    const AuthNonce& n_a = toward_a_->remote_payload()->auth_nonce;
    PairingPayload wanted{VictimA(), toward_b_->public_share(), n_a};
    sent.decommitment.message = EncodePayloadFields(wanted);
    Note("attacker: reopening commitment to B with N_A");
    return Replace{EncodeFrame(sent)};
  }

 private:
  Bytes victim_msg1_;
  Bytes own_msg3_;
  std::optional<Session> toward_a_;
  std::optional<Session> toward_b_;
};

// Leaves both commitment frames alone and swaps g^b for g^e in Msg2.
class RelayShareSwap final : public Attacker {
 public:
  using Attacker::Attacker;

 protected:
  Verdict OnCommit(ByteView frame, const Transcript&) override {
    victim_commitment_ = CommitmentOf(frame);
    return Deliver{};
  }

  Verdict OnPayload(ByteView frame, const Transcript&) override {
    Msg2 m = PayloadOf(frame);
    share_ = NewShare();
    key_with_b_ = DeriveKey(ctx_.params, m.payload.public_share, *share_);
    m.payload.public_share = ShareOf(*share_);
    return Replace{EncodeFrame(m)};
  }

  Verdict OnDecommit(ByteView frame, const Transcript&) override {
    PairingPayload m_a = OpenVictim(*victim_commitment_, frame);
    key_with_a_ = DeriveKey(ctx_.params, m_a.public_share, *share_);
    return Deliver{};
  }

 private:
  std::optional<Commitment> victim_commitment_;
  std::optional<PrivateShare> share_;
};

std::unique_ptr<Attacker> MakeAttacker(AttackContext ctx) {
  switch (ctx.strategy.kind) {
    case AttackKind::kHonest:
      return nullptr;
    case AttackKind::kImpersonateInitiator:
      return std::make_unique<ImpersonateInitiator>(std::move(ctx));
    case AttackKind::kImpersonateResponder:
      return std::make_unique<ImpersonateResponder>(std::move(ctx));
    case AttackKind::kFullMitm:
      return std::make_unique<FullMitm>(std::move(ctx));
    case AttackKind::kRelayShareSwap:
      return std::make_unique<RelayShareSwap>(std::move(ctx));
  }
  return nullptr;
}

AttackOutcome RunTrial(const AttackStrategy& strategy, const DhParams& params,
                       int sas_bits, std::uint64_t seed, std::uint64_t index,
                       const TrialOverrides& overrides) {
  if (!ValidSasBits(sas_bits)) Throw(Errc::kInvalidArgument, "k must be in [1, 64]");
  SeededRandom rng_a(seed, index, "initiator");
  SeededRandom rng_b(seed, index, "responder");

  Ephemeral eph_a = GenerateEphemeral(params, sas_bits, rng_a);
  Ephemeral eph_b = GenerateEphemeral(params, sas_bits, rng_b);
  if (overrides.initiator_nonce) eph_a.nonce = *overrides.initiator_nonce;
  if (overrides.initiator_share) eph_a.share = *overrides.initiator_share;
  if (overrides.responder_share) eph_b.share = *overrides.responder_share;

  std::unique_ptr<Attacker> attacker;
  InterposedPair pair;
  if (strategy.kind == AttackKind::kHonest) {
    pair = MakeInterposedPair();
  } else {
    pair = MakeInterposedPair(
        [&attacker](Direction d, ByteView f, const Transcript& log) -> Verdict {
          return attacker->OnFrame(d, f, log);
        });
    attacker = MakeAttacker(AttackContext{
        params, sas_bits, strategy, SeededRandom(seed, index, "attacker"),
        pair.transcript});
  }
  // Steps run back to back on one thread; anything not queued is lost.
  pair.a->set_timeout(std::chrono::milliseconds(0));
  pair.b->set_timeout(std::chrono::milliseconds(0));

  AttackOutcome out;
  out.nonce_a = eph_a.nonce;
  const SessionConfig cfg_a{params, VictimA(), sas_bits};
  const SessionConfig cfg_b{params, VictimB(), sas_bits};
  std::optional<Session> a;
  std::optional<Session> b;

  auto step = [&](std::string_view who, auto&& fn) {
    try {
      fn();
      return true;
    } catch (const Error& e) {
      pair.transcript->Note(std::string(who) + ": " + e.what());
      return false;
    }
  };

  Bytes frame;
  bool ok = step("initiator", [&] {
    auto [s, m1] = Session::StartInitiator(cfg_a, rng_a, eph_a);
    a.emplace(std::move(s));
    pair.a->Send(m1);
  });
  ok = ok && step("responder", [&] {
    frame = pair.b->Recv();
    auto [s, m2] = Session::RespondToCommit(cfg_b, rng_b, frame, eph_b);
    b.emplace(std::move(s));
    pair.b->Send(m2);
  });
  ok = ok && step("initiator", [&] {
    frame = pair.a->Recv();
    Session::PayloadResult r = a->OnPayload(frame);
    out.sas_a = r.sas;
    pair.a->Send(r.msg3);
  });
  ok = ok && step("responder", [&] {
    frame = pair.b->Recv();
    out.sas_b = b->OnDecommit(frame);
  });

  // Perfect human comparators: confirm iff both screens show the same SAS.
  out.sas_match = out.sas_a && out.sas_b && *out.sas_a == *out.sas_b;
  if (a && a->phase() == Phase::kSasReady) {
    step("initiator", [&] { out.key_a = a->Confirm(out.sas_match); });
  }
  if (b && b->phase() == Phase::kSasReady) {
    step("responder", [&] { out.key_b = b->Confirm(out.sas_match); });
  }

  if (attacker) {
    out.attacker_keyed =
        (out.key_a && attacker->key_with_a() == out.key_a) ||
        (out.key_b && attacker->key_with_b() == out.key_b);
    out.success = out.sas_match && out.key_a && out.key_b && out.attacker_keyed;
  } else {
    out.success = out.sas_match && out.key_a && out.key_b && *out.key_a == *out.key_b;
  }
  out.transcript = pair.transcript->Events();
  return out;
}

}  // namespace

AttackOutcome RunHonestSession(const DhParams& params, int sas_bits,
                               std::uint64_t seed) {
  return RunTrial(AttackStrategy{AttackKind::kHonest}, params, sas_bits, seed,
                  0, {});
}

AttackOutcome RunMitmTrial(const AttackStrategy& strategy,
                           const DhParams& params, int sas_bits,
                           std::uint64_t seed,
                           const TrialOverrides& overrides) {
  return RunTrial(strategy, params, sas_bits, seed, 0, overrides);
}

ExactFraction ExhaustiveAttackSuccess(const AttackStrategy& strategy,
                                      const DhParams& params, int sas_bits,
                                      std::uint64_t seed) {
  if (sas_bits > kMaxExhaustiveBits) {
    Throw(Errc::kKTooLarge, "exhaustive enumeration needs k <= 16");
  }
  if (!ValidSasBits(sas_bits)) Throw(Errc::kInvalidArgument, "k must be in [1, 64]");
  const bool impersonation =
      strategy.kind == AttackKind::kImpersonateInitiator ||
      strategy.kind == AttackKind::kImpersonateResponder;
  if (impersonation && strategy.guess_rule == GuessRule::kAdaptive) {
    Throw(Errc::kInvalidArgument,
          "an adaptive guess varies with the enumerated nonce");
  }
  ExactFraction fraction;
  fraction.total = std::uint64_t{1} << sas_bits;
  for (std::uint64_t v = 0; v < fraction.total; ++v) {
    TrialOverrides pin;
    pin.initiator_nonce = AuthNonce::FromValue(sas_bits, v);
    if (RunTrial(strategy, params, sas_bits, seed, 0, pin).success) {
      ++fraction.successes;
    }
  }
  return fraction;
}

RateEstimate BinomialEstimate(std::uint64_t successes, std::uint64_t trials,
                              double confidence) {
  if (trials == 0 || successes > trials) {
    Throw(Errc::kInvalidArgument, "need 0 <= successes <= trials, trials > 0");
  }
  using boost::math::binomial_distribution;
  const double alpha = (1.0 - confidence) / 2.0;
  const double n = static_cast<double>(trials);
  const double s = static_cast<double>(successes);
  RateEstimate r;
  r.trials = trials;
  r.successes = successes;
  r.rate = s / n;
  r.ci_low = successes == 0
                 ? 0.0
                 : binomial_distribution<>::find_lower_bound_on_p(n, s, alpha);
  r.ci_high = successes == trials
                  ? 1.0
                  : binomial_distribution<>::find_upper_bound_on_p(n, s, alpha);
  r.ci_low = std::min(r.ci_low, r.rate);
  r.ci_high = std::max(r.ci_high, r.rate);
  return r;
}

RateEstimate EstimateAttackSuccess(const AttackStrategy& strategy,
                                   const DhParams& params, int sas_bits,
                                   std::uint64_t trials, std::uint64_t seed,
                                   unsigned threads) {
  const std::uint64_t minimum =
      strategy.kind == AttackKind::kHonest ? 1 : kMinAttackTrials;
  if (trials < minimum) {
    Throw(Errc::kInvalidArgument,
          "need at least " + std::to_string(minimum) + " trials");
  }
  threads = std::max(1u, threads);
  std::atomic<std::uint64_t> successes{0};
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    std::uint64_t local = 0;
    for (std::uint64_t i = next++; i < trials; i = next++) {
      if (RunTrial(strategy, params, sas_bits, seed, i, {}).success) ++local;
    }
    successes += local;
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return BinomialEstimate(successes.load(), trials);
}

namespace {

double TwoToMinus(int bits) { return std::ldexp(1.0, -bits); }

}  // namespace

SimReport MakeExhaustiveReport(const AttackStrategy& strategy, int sas_bits,
                               const ExactFraction& fraction) {
  SimReport r;
  r.strategy = strategy;
  r.mode = SimMode::kExhaustive;
  r.sas_bits = sas_bits;
  r.estimate.trials = fraction.total;
  r.estimate.successes = fraction.successes;
  r.estimate.rate = r.estimate.ci_low = r.estimate.ci_high = fraction.value();
  r.bound = TwoToMinus(sas_bits);
  r.pass = strategy.kind == AttackKind::kHonest
               ? fraction.successes == fraction.total
               : fraction.AtMostTwoToMinus(sas_bits);
  return r;
}

SimReport MakeMonteCarloReport(const AttackStrategy& strategy, int sas_bits,
                               const RateEstimate& estimate) {
  SimReport r;
  r.strategy = strategy;
  r.mode = SimMode::kMonteCarlo;
  r.sas_bits = sas_bits;
  r.estimate = estimate;
  r.bound = TwoToMinus(sas_bits);
  r.pass = strategy.kind == AttackKind::kHonest
               ? estimate.successes == estimate.trials
               : estimate.ci_low <= r.bound;
  return r;
}

namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string_view ModeName(SimMode mode) {
  return mode == SimMode::kExhaustive ? "exhaustive" : "monte-carlo";
}

std::string_view CheckName(const SimReport& r) {
  return r.strategy.kind == AttackKind::kHonest ? "completeness" : "bound";
}

}  // namespace

std::string FormatReportTable(const std::vector<SimReport>& reports) {
  std::vector<std::vector<std::string>> rows = {
      {"strategy", "guess", "mode", "check", "k", "trials", "successes", "rate",
       "ci_low", "ci_high", "bound", "result"}};
  for (const SimReport& r : reports) {
    rows.push_back({std::string(AttackKindName(r.strategy.kind)),
                    std::string(GuessRuleName(r.strategy.guess_rule)),
                    std::string(ModeName(r.mode)), std::string(CheckName(r)),
                    std::to_string(r.sas_bits),
                    std::to_string(r.estimate.trials),
                    std::to_string(r.estimate.successes), Num(r.estimate.rate),
                    Num(r.estimate.ci_low), Num(r.estimate.ci_high),
                    Num(r.bound), r.pass ? "pass" : "fail"});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      width[i] = std::max(width[i], row[i].size());
    }
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << row[i];
      if (i + 1 < row.size()) out << std::string(width[i] - row[i].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

std::string FormatReportKeyValue(const SimReport& r) {
  std::ostringstream out;
  out << "strategy=" << AttackKindName(r.strategy.kind)
      << " guess=" << GuessRuleName(r.strategy.guess_rule)
      << " mode=" << ModeName(r.mode) << " check=" << CheckName(r)
      << " k=" << r.sas_bits << " trials=" << r.estimate.trials
      << " successes=" << r.estimate.successes
      << " rate=" << Num(r.estimate.rate) << " ci_low=" << Num(r.estimate.ci_low)
      << " ci_high=" << Num(r.estimate.ci_high) << " bound=" << Num(r.bound)
      << " result=" << (r.pass ? "pass" : "fail");
  return out.str();
}

}  // namespace saska
