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

// Modular arithmetic over a prime-order subgroup of Z_p^* and the
// Diffie-Hellman operations built on it.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "saska/bytes.h"
#include "saska/random.h"

namespace saska {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kPrimalityRounds = 64;

// Public group description (p, q, g). Only ValidateParams can build one, so
// every instance satisfies: p and q prime, q | p - 1, 1 < g < p, g^q = 1.
class DhParams {
 public:
  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  const BigInt& g() const { return g_; }

  bool operator==(const DhParams&) const = default;

 private:
  friend DhParams ValidateParams(BigInt p, BigInt q, BigInt g);
  DhParams(BigInt p, BigInt q, BigInt g)
      : p_(std::move(p)), q_(std::move(q)), g_(std::move(g)) {}

  BigInt p_;
  BigInt q_;
  BigInt g_;
};

struct PrivateShare {
  BigInt exponent;  // in [1, q - 1]
};

struct PublicShare {
  BigInt value;

  bool operator==(const PublicShare&) const = default;
};

struct SessionKey {
  BigInt value;

  // Minimal big-endian encoding.
  Bytes Octets() const;
  bool operator==(const SessionKey&) const = default;
};

// base^exponent mod modulus by left-to-right square-and-multiply.
// Requires modulus >= 2, exponent >= 0 and 0 <= base < modulus.
BigInt ModExp(const BigInt& base, const BigInt& exponent, const BigInt& modulus);

// Miller-Rabin with a fixed number of random bases.
bool IsProbablePrime(const BigInt& n, int rounds = kPrimalityRounds);

// Throws kNotPrime, kOrderMismatch or kBadGenerator.
DhParams ValidateParams(BigInt p, BigInt q, BigInt g);

// True iff 1 < value < p and value^q = 1 (mod p).
bool InSubgroup(const DhParams& params, const BigInt& value);

// Exponent uniform on [1, q - 1].
PrivateShare GenPrivateShare(const DhParams& params, RandomSource& rng);

// Throws kInvalidArgument if the exponent is outside [1, q - 1].
PublicShare PubShare(const DhParams& params, const PrivateShare& priv);

// peer^exponent mod p, after the subgroup check on the peer's share.
// Throws kSubgroupCheckFailed.
SessionKey DeriveKey(const DhParams& params, const PublicShare& peer,
                     const PrivateShare& priv);

// Minimal big-endian magnitude (no leading zero octets; zero is one 0x00).
Bytes EncodeMagnitude(const BigInt& value);
// Rejects empty input and leading zero octets with kMalformedMessage.
BigInt DecodeMagnitude(ByteView octets);

}  // namespace saska
