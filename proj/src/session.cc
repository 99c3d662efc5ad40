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

#include "saska/session.h"

#include "saska/error.h"
#include "saska/params.h"

namespace saska {

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kCreated: return "created";
    case Phase::kCommitSent: return "commit-sent";
    case Phase::kCommitReceived: return "commit-received";
    case Phase::kPayloadExchanged: return "payload-exchanged";
    case Phase::kDecommitted: return "decommitted";
    case Phase::kSasReady: return "sas-ready";
    case Phase::kConfirmed: return "confirmed";
    case Phase::kAborted: return "aborted";
  }
  return "unknown";
}

Ephemeral GenerateEphemeral(const DhParams& params, int sas_bits,
                            RandomSource& rng) {
  PrivateShare share = GenPrivateShare(params, rng);
  return Ephemeral{std::move(share), AuthNonce::Random(sas_bits, rng)};
}

Session::Session(Role role, SessionConfig config, Ephemeral secrets)
    : role_(role),
      config_(std::move(config)),
      secrets_(std::move(secrets)),
      public_share_(PubShare(config_.params, secrets_.share)) {
  if (!ValidSasBits(config_.sas_bits)) {
    Throw(Errc::kInvalidArgument, "k must be in [1, 64]");
  }
  if (secrets_.nonce.bits() != config_.sas_bits) {
    Throw(Errc::kInvalidArgument, "nonce length differs from k");
  }
  log_.push_back(Phase::kCreated);
}

template <typename F>
auto Session::Guarded(F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error&) {
    if (phase_ != Phase::kConfirmed && phase_ != Phase::kAborted) Abort();
    throw;
  }
}

void Session::Advance(Phase next) {
  if (next <= phase_) Throw(Errc::kWrongPhase, "phases only move forward");
  phase_ = next;
  log_.push_back(next);
}

void Session::Abort() {
  phase_ = Phase::kAborted;
  log_.push_back(Phase::kAborted);
  own_decommitment_.reset();
  key_.reset();
}

void Session::RequirePhase(Phase expected) const {
  if (phase_ != expected) {
    Throw(Errc::kWrongPhase, "expected phase " + std::string(PhaseName(expected)) +
                                 ", session is " + std::string(PhaseName(phase_)));
  }
}

PairingPayload Session::OwnPayload() const {
  return PairingPayload{config_.identity, public_share_, secrets_.nonce};
}

void Session::AcceptRemote(PairingPayload remote) {
  if (!InSubgroup(config_.params, remote.public_share.value)) {
    Throw(Errc::kSubgroupCheckFailed, "remote share outside the order-q subgroup");
  }
  remote_ = std::move(remote);
}

Session::Started<Bytes> Session::StartInitiator(const SessionConfig& config,
                                                RandomSource& rng) {
  return StartInitiator(config, rng,
                        GenerateEphemeral(config.params, config.sas_bits, rng));
}

Session::Started<Bytes> Session::StartInitiator(const SessionConfig& config,
                                                RandomSource& rng,
                                                Ephemeral secrets) {
  Session s(Role::kInitiator, config, std::move(secrets));
  CommitPair pair = Commit(EncodePayloadFields(s.OwnPayload()), rng);
  s.own_decommitment_ = std::move(pair.decommitment);
  Bytes msg1 = EncodeFrame(Msg1{pair.commitment});
  s.Advance(Phase::kCommitSent);
  return {std::move(s), std::move(msg1)};
}

Session::Started<Bytes> Session::RespondToCommit(const SessionConfig& config,
                                                 RandomSource& rng,
                                                 ByteView msg1) {
  // Reject a bad frame before spending randomness on it.
  DecodeFrame(msg1);
  return RespondToCommit(config, rng, msg1,
                         GenerateEphemeral(config.params, config.sas_bits, rng));
}

Session::Started<Bytes> Session::RespondToCommit(const SessionConfig& config,
                                                 RandomSource& /*rng*/,
                                                 ByteView msg1,
                                                 Ephemeral secrets) {
  PairingMessage decoded = DecodeFrame(msg1);
  const auto* commit = std::get_if<Msg1>(&decoded);
  if (commit == nullptr) Throw(Errc::kMalformedMessage, "expected Msg1");

  Session s(Role::kResponder, config, std::move(secrets));
  s.received_commitment_ = commit->commitment;
  s.Advance(Phase::kCommitReceived);
  Bytes msg2 = EncodeFrame(Msg2{ParamSetId(config.params), s.OwnPayload()});
  s.Advance(Phase::kPayloadExchanged);
  return {std::move(s), std::move(msg2)};
}

Session::PayloadResult Session::OnPayload(ByteView msg2) {
  return Guarded([&] {
    if (role_ != Role::kInitiator) Throw(Errc::kWrongPhase, "not the initiator");
    RequirePhase(Phase::kCommitSent);
    PairingMessage decoded = DecodeFrame(msg2);
    auto* payload = std::get_if<Msg2>(&decoded);
    if (payload == nullptr) Throw(Errc::kMalformedMessage, "expected Msg2");
    if (payload->param_set_id != ParamSetId(config_.params)) {
      Throw(Errc::kParameterMismatch, "peer uses a different group");
    }
    if (payload->payload.auth_nonce.bits() != config_.sas_bits) {
      Throw(Errc::kParameterMismatch, "peer uses a different k");
    }
    AcceptRemote(std::move(payload->payload));
    Advance(Phase::kPayloadExchanged);

    Sas sas = ComputeSas(secrets_.nonce, remote_->auth_nonce);
    Bytes msg3 = EncodeFrame(Msg3{*own_decommitment_});
    Advance(Phase::kDecommitted);
    sas_ = sas;
    Advance(Phase::kSasReady);
    return PayloadResult{std::move(msg3), sas};
  });
}

Sas Session::OnDecommit(ByteView msg3) {
  return Guarded([&] {
    if (role_ != Role::kResponder) Throw(Errc::kWrongPhase, "not the responder");
    RequirePhase(Phase::kPayloadExchanged);
    PairingMessage decoded = DecodeFrame(msg3);
    const auto* open = std::get_if<Msg3>(&decoded);
    if (open == nullptr) Throw(Errc::kMalformedMessage, "expected Msg3");
    Bytes m_a = Open(*received_commitment_, open->decommitment);
    AcceptRemote(DecodePayloadFields(m_a, config_.sas_bits));
    Advance(Phase::kDecommitted);
    sas_ = ComputeSas(secrets_.nonce, remote_->auth_nonce);
    Advance(Phase::kSasReady);
    return *sas_;
  });
}

std::optional<SessionKey> Session::Confirm(bool user_accepts) {
  return Guarded([&]() -> std::optional<SessionKey> {
    RequirePhase(Phase::kSasReady);
    if (!user_accepts) {
      Abort();
      return std::nullopt;
    }
    key_ = DeriveKey(config_.params, remote_->public_share, secrets_.share);
    Advance(Phase::kConfirmed);
    return key_;
  });
}

}  // namespace saska
