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

// Three-message key agreement with short-authentication-string comparison.
//
//   initiator A                          responder B
//   ----------- Msg1: c = commit(m_A) ----------->
//   <---------- Msg2: m_B = ID_B | g^b | N_B -----
//   ----------- Msg3: d = (nonce, m_A) ---------->
//
// Both sides then show S = N_A xor N_B to their users. The session key
// g^ab is computed only after the local user confirms the match.

#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "saska/bytes.h"
#include "saska/commitment.h"
#include "saska/group.h"
#include "saska/sas.h"
#include "saska/wire.h"

namespace saska {

inline constexpr std::chrono::milliseconds kDefaultMessageTimeout{30000};

enum class Role { kInitiator, kResponder };

// Ordered; a session only ever moves forward through these.
enum class Phase {
  kCreated,
  kCommitSent,       // initiator
  kCommitReceived,   // responder
  kPayloadExchanged,
  kDecommitted,
  kSasReady,
  kConfirmed,
  kAborted,
};

std::string_view PhaseName(Phase phase);

struct SessionConfig {
  DhParams params;
  Identity identity;
  int sas_bits = kDefaultSasBits;
};

// Per-session secrets. Normally drawn from the random source; supplying them
// explicitly pins a session for tests and exhaustive simulation.
struct Ephemeral {
  PrivateShare share;
  AuthNonce nonce;
};

Ephemeral GenerateEphemeral(const DhParams& params, int sas_bits,
                            RandomSource& rng);

class Session {
 public:
  template <typename T>
  using Started = std::pair<Session, T>;

  // Returns the session in kCommitSent and the Msg1 frame.
  static Started<Bytes> StartInitiator(const SessionConfig& config,
                                       RandomSource& rng);
  static Started<Bytes> StartInitiator(const SessionConfig& config,
                                       RandomSource& rng, Ephemeral secrets);

  // Consumes a Msg1 frame; returns the session in kPayloadExchanged and the
  // Msg2 frame. Throws kMalformedMessage.
  static Started<Bytes> RespondToCommit(const SessionConfig& config,
                                        RandomSource& rng, ByteView msg1);
  static Started<Bytes> RespondToCommit(const SessionConfig& config,
                                        RandomSource& rng, ByteView msg1,
                                        Ephemeral secrets);

  struct PayloadResult {
    Bytes msg3;
    Sas sas;
  };

  // Initiator: consumes Msg2, returns Msg3 and S_A. The received share is
  // subgroup-checked before the decommitment leaves this object.
  PayloadResult OnPayload(ByteView msg2);

  // Responder: consumes Msg3, opens the commitment and returns S_B.
  Sas OnDecommit(ByteView msg3);

  // The only path to the session key. On rejection the session aborts and
  // no key is ever computed.
  std::optional<SessionKey> Confirm(bool user_accepts);

  Role role() const { return role_; }
  Phase phase() const { return phase_; }
  std::span<const Phase> phase_log() const { return log_; }
  int sas_bits() const { return config_.sas_bits; }
  const DhParams& params() const { return config_.params; }
  const Identity& identity() const { return config_.identity; }
  const PublicShare& public_share() const { return public_share_; }
  const AuthNonce& auth_nonce() const { return secrets_.nonce; }
  const std::optional<PairingPayload>& remote_payload() const {
    return remote_;
  }
  const std::optional<Sas>& sas() const { return sas_; }
  const std::optional<SessionKey>& session_key() const { return key_; }

 private:
  Session(Role role, SessionConfig config, Ephemeral secrets);

  void Advance(Phase next);
  void Abort();
  void RequirePhase(Phase expected) const;
  PairingPayload OwnPayload() const;
  void AcceptRemote(PairingPayload remote);

  template <typename F>
  auto Guarded(F&& body) -> decltype(body());

  Role role_;
  SessionConfig config_;
  Ephemeral secrets_;
  PublicShare public_share_;
  Phase phase_ = Phase::kCreated;
  std::vector<Phase> log_;

  std::optional<Decommitment> own_decommitment_;     // initiator
  std::optional<Commitment> received_commitment_;    // responder
  std::optional<PairingPayload> remote_;
  std::optional<Sas> sas_;
  std::optional<SessionKey> key_;
};

}  // namespace saska
