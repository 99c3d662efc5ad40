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

#pragma once

#include <cstdint>
#include <string>

#include "saska/bytes.h"
#include "saska/error.h"
#include "saska/random.h"

namespace saska {

inline constexpr int kDefaultSasBits = 20;
inline constexpr int kMaxSasBits = 64;

inline bool ValidSasBits(int bits) { return bits >= 1 && bits <= kMaxSasBits; }
inline std::size_t OctetsForBits(int bits) { return (bits + 7) / 8; }

// A k-bit string, 1 <= k <= 64, held in the low bits of a 64-bit word.
// The tag keeps nonces and authentication strings apart in the type system.
template <typename Tag>
class BitString {
 public:
  // Throws kInvalidArgument if k is out of range or value has bits above k.
  static BitString FromValue(int bits, std::uint64_t value) {
    if (!ValidSasBits(bits)) {
      Throw(Errc::kInvalidArgument, "bit length must be in [1, 64]");
    }
    if ((value & ~Mask(bits)) != 0) {
      Throw(Errc::kInvalidArgument, "value has bits above k");
    }
    return BitString(bits, value);
  }

  // Decodes ceil(k/8) big-endian octets. Throws kMalformedMessage on a
  // length mismatch or nonzero padding bits.
  static BitString FromOctets(int bits, ByteView octets) {
    if (!ValidSasBits(bits) || octets.size() != OctetsForBits(bits)) {
      Throw(Errc::kMalformedMessage, "bit string length mismatch");
    }
    std::uint64_t v = 0;
    for (std::uint8_t b : octets) v = (v << 8) | b;
    if ((v & ~Mask(bits)) != 0) {
      Throw(Errc::kMalformedMessage, "nonzero padding bits");
    }
    return BitString(bits, v);
  }

  static BitString Random(int bits, RandomSource& rng) {
    if (!ValidSasBits(bits)) {
      Throw(Errc::kInvalidArgument, "bit length must be in [1, 64]");
    }
    return BitString(bits, rng.NextU64() & Mask(bits));
  }

  int bits() const { return bits_; }
  std::uint64_t value() const { return value_; }

  Bytes Octets() const {
    Bytes out(OctetsForBits(bits_));
    std::uint64_t v = value_;
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
      *it = static_cast<std::uint8_t>(v & 0xff);
      v >>= 8;
    }
    return out;
  }

  bool operator==(const BitString&) const = default;

  static std::uint64_t Mask(int bits) {
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
  }

 private:
  BitString(int bits, std::uint64_t value) : bits_(bits), value_(value) {}

  int bits_ = kDefaultSasBits;
  std::uint64_t value_ = 0;
};

using AuthNonce = BitString<struct AuthNonceTag>;
using Sas = BitString<struct SasTag>;

// local XOR remote. Throws kLengthMismatch when the bit lengths differ.
Sas ComputeSas(const AuthNonce& local, const AuthNonce& remote);

// Uppercase hex, ceil(k/4) digits, zero padded.
std::string FormatSas(const Sas& sas);

}  // namespace saska
