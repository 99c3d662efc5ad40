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

// Frame layout: [1-octet tag][4-octet big-endian body length][body].
//
//   Msg1 body: c (32 octets)
//   Msg2 body: param-set id (4) | k (2) | ID field | share field | nonce field
//   Msg3 body: commitment nonce (32) | encoded m_A (fields as in Msg2)
//
// A field is a 2-octet big-endian length followed by its octets. Shares use
// the minimal big-endian magnitude; nonces use ceil(k/8) octets.

#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "saska/bytes.h"
#include "saska/commitment.h"
#include "saska/group.h"
#include "saska/sas.h"

namespace saska {

inline constexpr std::size_t kFrameHeaderSize = 5;
inline constexpr std::size_t kMaxBodySize = 65535;
inline constexpr std::size_t kMaxIdentitySize = 64;

enum class MessageType : std::uint8_t {
  kCommit = 0x01,
  kPayload = 0x02,
  kDecommit = 0x03,
};

// Human-readable label: non-empty UTF-8, at most 64 octets.
class Identity {
 public:
  // Throws kInvalidArgument.
  explicit Identity(std::string label);

  const std::string& label() const { return label_; }
  bool operator==(const Identity&) const = default;

 private:
  std::string label_;
};

bool IsValidUtf8(std::string_view s);

struct PairingPayload {
  Identity identity;
  PublicShare public_share;
  AuthNonce auth_nonce;

  bool operator==(const PairingPayload&) const = default;
};

struct Msg1 {
  Commitment commitment;
  bool operator==(const Msg1&) const = default;
};

struct Msg2 {
  std::uint32_t param_set_id = 0;
  PairingPayload payload;
  bool operator==(const Msg2&) const = default;
};

struct Msg3 {
  Decommitment decommitment;
  bool operator==(const Msg3&) const = default;
};

using PairingMessage = std::variant<Msg1, Msg2, Msg3>;

// ID, share and nonce fields; this is the committed m_A and the tail of Msg2.
Bytes EncodePayloadFields(const PairingPayload& payload);
// Throws kMalformedMessage, including on trailing octets.
PairingPayload DecodePayloadFields(ByteView fields, int bits);

Bytes EncodeFrame(const PairingMessage& message);
// Throws kMalformedMessage on any framing or field violation.
PairingMessage DecodeFrame(ByteView frame);

// Header-only checks shared by transports: known tag, declared length equal
// to the body size and at most kMaxBodySize. Throws kMalformedMessage.
void CheckFrame(ByteView frame);
// Body length declared in a 5-octet header. Throws kMalformedMessage when it
// exceeds kMaxBodySize.
std::size_t DeclaredBodySize(ByteView header);

MessageType FrameType(ByteView frame);

}  // namespace saska
