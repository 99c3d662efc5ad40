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

#include "saska/group.h"

#include <iterator>
#include <random>

#include <boost/multiprecision/miller_rabin.hpp>

#include "saska/error.h"

namespace saska {

namespace mp = boost::multiprecision;

Bytes SessionKey::Octets() const { return EncodeMagnitude(value); }

BigInt ModExp(const BigInt& base, const BigInt& exponent,
              const BigInt& modulus) {
  if (modulus < 2 || exponent < 0 || base < 0 || base >= modulus) {
    Throw(Errc::kInvalidArgument, "ModExp precondition violated");
  }
  BigInt result = 1;
  if (exponent == 0) return result % modulus;
  for (std::size_t i = mp::msb(exponent) + 1; i-- > 0;) {
    result = (result * result) % modulus;
    if (mp::bit_test(exponent, static_cast<unsigned>(i))) {
      result = (result * base) % modulus;
    }
  }
  return result;
}

bool IsProbablePrime(const BigInt& n, int rounds) {
  if (n < 2) return false;
  if (n < 4) return true;
  // Witness selection only needs to be unpredictable to the parameters,
  // which are fixed before this runs.
  std::mt19937_64 gen(0x5a5ca0011ull);
  return mp::miller_rabin_test(n, static_cast<unsigned>(rounds), gen);
}

DhParams ValidateParams(BigInt p, BigInt q, BigInt g) {
  if (!IsProbablePrime(p)) Throw(Errc::kNotPrime, "p is not prime");
  if (!IsProbablePrime(q)) Throw(Errc::kNotPrime, "q is not prime");
  if ((p - 1) % q != 0) Throw(Errc::kOrderMismatch, "q does not divide p - 1");
  if (g <= 1 || g >= p) Throw(Errc::kBadGenerator, "g must satisfy 1 < g < p");
  if (ModExp(g, q, p) != 1) {
    Throw(Errc::kBadGenerator, "g does not have order q");
  }
  return DhParams(std::move(p), std::move(q), std::move(g));
}

bool InSubgroup(const DhParams& params, const BigInt& value) {
  if (value <= 1 || value >= params.p()) return false;
  return ModExp(value, params.q(), params.p()) == 1;
}

PrivateShare GenPrivateShare(const DhParams& params, RandomSource& rng) {
  const BigInt range = params.q() - 1;  // exponents 1 .. q-1
  if (range <= 1) return PrivateShare{BigInt(1)};
  const std::size_t bits = mp::msb(BigInt(range - 1)) + 1;
  Bytes buf((bits + 7) / 8);
  for (;;) {
    rng.Fill(buf);
    BigInt candidate;
    mp::import_bits(candidate, buf.begin(), buf.end(), 8);
    candidate &= (BigInt(1) << bits) - 1;
    if (candidate < range) return PrivateShare{candidate + 1};
  }
}

PublicShare PubShare(const DhParams& params, const PrivateShare& priv) {
  if (priv.exponent < 1 || priv.exponent >= params.q()) {
    Throw(Errc::kInvalidArgument, "private exponent outside [1, q-1]");
  }
  return PublicShare{ModExp(params.g(), priv.exponent, params.p())};
}

SessionKey DeriveKey(const DhParams& params, const PublicShare& peer,
                     const PrivateShare& priv) {
  if (!InSubgroup(params, peer.value)) {
    Throw(Errc::kSubgroupCheckFailed, "peer share outside the order-q subgroup");
  }
  if (priv.exponent < 1 || priv.exponent >= params.q()) {
    Throw(Errc::kInvalidArgument, "private exponent outside [1, q-1]");
  }
  return SessionKey{ModExp(peer.value, priv.exponent, params.p())};
}

Bytes EncodeMagnitude(const BigInt& value) {
  if (value < 0) Throw(Errc::kInvalidArgument, "negative magnitude");
  Bytes out;
  mp::export_bits(value, std::back_inserter(out), 8);
  if (out.empty()) out.push_back(0);
  return out;
}

BigInt DecodeMagnitude(ByteView octets) {
  if (octets.empty()) Throw(Errc::kMalformedMessage, "empty integer field");
  if (octets.size() > 1 && octets[0] == 0) {
    Throw(Errc::kMalformedMessage, "non-minimal integer encoding");
  }
  BigInt value;
  mp::import_bits(value, octets.begin(), octets.end(), 8);
  return value;
}

}  // namespace saska
