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

#include "saska/wire.h"

#include <string>

#include "saska/error.h"

namespace saska {

bool IsValidUtf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t j = 1; j < len; ++j) {
      const auto cc = static_cast<unsigned char>(s[i + j]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // Overlong forms, surrogates and values past U+10FFFF.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10ffff ||
        (cp >= 0xd800 && cp <= 0xdfff)) {
      return false;
    }
    i += len;
  }
  return true;
}

Identity::Identity(std::string label) : label_(std::move(label)) {
  if (label_.empty() || label_.size() > kMaxIdentitySize) {
    Throw(Errc::kInvalidArgument, "identity must be 1-64 octets");
  }
  if (!IsValidUtf8(label_)) {
    Throw(Errc::kInvalidArgument, "identity is not valid UTF-8");
  }
}

Bytes EncodePayloadFields(const PairingPayload& payload) {
  ByteWriter w;
  w.Field(AsBytes(payload.identity.label()));
  w.Field(EncodeMagnitude(payload.public_share.value));
  w.Field(payload.auth_nonce.Octets());
  return w.Take();
}

PairingPayload DecodePayloadFields(ByteView fields, int bits) {
  ByteReader r(fields);
  ByteView id = r.Field();
  ByteView share = r.Field();
  ByteView nonce = r.Field();
  if (!r.done()) Throw(Errc::kMalformedMessage, "trailing octets in payload");
  std::string label(id.begin(), id.end());
  if (label.empty() || label.size() > kMaxIdentitySize || !IsValidUtf8(label)) {
    Throw(Errc::kMalformedMessage, "invalid identity field");
  }
  return PairingPayload{Identity(std::move(label)),
                        PublicShare{DecodeMagnitude(share)},
                        AuthNonce::FromOctets(bits, nonce)};
}

namespace {

Bytes Frame(MessageType type, ByteView body) {
  if (body.size() > kMaxBodySize) {
    Throw(Errc::kMalformedMessage, "body exceeds 65535 octets");
  }
  ByteWriter w;
  w.U8(static_cast<std::uint8_t>(type));
  w.U32(static_cast<std::uint32_t>(body.size()));
  w.Raw(body);
  return w.Take();
}

struct Encoder {
  Bytes operator()(const Msg1& m) const {
    return Frame(MessageType::kCommit, m.commitment.c);
  }
  Bytes operator()(const Msg2& m) const {
    ByteWriter w;
    w.U32(m.param_set_id);
    w.U16(static_cast<std::uint16_t>(m.payload.auth_nonce.bits()));
    w.Raw(EncodePayloadFields(m.payload));
    return Frame(MessageType::kPayload, w.Take());
  }
  Bytes operator()(const Msg3& m) const {
    if (m.decommitment.message.empty()) {
      Throw(Errc::kMalformedMessage, "empty decommitted message");
    }
    ByteWriter w;
    w.Raw(m.decommitment.nonce);
    w.Raw(m.decommitment.message);
    return Frame(MessageType::kDecommit, w.Take());
  }
};

}  // namespace

Bytes EncodeFrame(const PairingMessage& message) {
  return std::visit(Encoder{}, message);
}

std::size_t DeclaredBodySize(ByteView header) {
  if (header.size() < kFrameHeaderSize) {
    Throw(Errc::kMalformedMessage, "truncated frame header");
  }
  std::size_t len = (std::size_t{header[1]} << 24) |
                    (std::size_t{header[2]} << 16) |
                    (std::size_t{header[3]} << 8) | header[4];
  if (len > kMaxBodySize) {
    Throw(Errc::kMalformedMessage, "body exceeds 65535 octets");
  }
  return len;
}

MessageType FrameType(ByteView frame) {
  if (frame.empty()) Throw(Errc::kMalformedMessage, "empty frame");
  switch (frame[0]) {
    case 0x01: return MessageType::kCommit;
    case 0x02: return MessageType::kPayload;
    case 0x03: return MessageType::kDecommit;
    default: break;
  }
  Throw(Errc::kMalformedMessage, "unknown message tag");
}

void CheckFrame(ByteView frame) {
  FrameType(frame);
  if (DeclaredBodySize(frame) != frame.size() - kFrameHeaderSize) {
    Throw(Errc::kMalformedMessage, "declared length does not match body");
  }
}

PairingMessage DecodeFrame(ByteView frame) {
  CheckFrame(frame);
  ByteReader r(frame.subspan(kFrameHeaderSize));
  switch (FrameType(frame)) {
    case MessageType::kCommit: {
      if (r.remaining() != kDigestSize) {
        Throw(Errc::kMalformedMessage, "Msg1 body must be 32 octets");
      }
      Msg1 m;
      ByteView c = r.Raw(kDigestSize);
      std::copy(c.begin(), c.end(), m.commitment.c.begin());
      return m;
    }
    case MessageType::kPayload: {
      std::uint32_t id = r.U32();
      int bits = r.U16();
      if (!ValidSasBits(bits)) {
        Throw(Errc::kMalformedMessage, "k outside [1, 64]");
      }
      return Msg2{id, DecodePayloadFields(r.Rest(), bits)};
    }
    case MessageType::kDecommit: {
      Msg3 m;
      ByteView nonce = r.Raw(kCommitNonceSize);
      std::copy(nonce.begin(), nonce.end(), m.decommitment.nonce.begin());
      ByteView rest = r.Rest();
      if (rest.empty()) {
        Throw(Errc::kMalformedMessage, "empty decommitted message");
      }
      m.decommitment.message.assign(rest.begin(), rest.end());
      return m;
    }
  }
  Throw(Errc::kMalformedMessage, "unknown message tag");
}

}  // namespace saska
