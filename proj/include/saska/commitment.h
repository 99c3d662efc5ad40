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

// Hash-based commitment: c = H(tag || nonce || m), opened by (nonce, m).

#pragma once

#include <array>
#include <cstdint>

#include "saska/bytes.h"
#include "saska/random.h"
#include "saska/sha256.h"

namespace saska {

inline constexpr std::array<std::uint8_t, 8> kDomainTag = {
    'S', 'A', 'S', 'K', 'A', '-', '0', '1'};
inline constexpr std::size_t kCommitNonceSize = 32;

struct Commitment {
  Digest c{};

  bool operator==(const Commitment&) const = default;
};

struct Decommitment {
  std::array<std::uint8_t, kCommitNonceSize> nonce{};
  Bytes message;

  bool operator==(const Decommitment&) const = default;
};

struct CommitPair {
  Commitment commitment;
  Decommitment decommitment;
};

// Throws kEmptyMessage or kRngFailure.
CommitPair Commit(ByteView message, RandomSource& rng,
                  const HashFunction& hash = Sha256);

// Returns the committed message. Throws kOpenFailed unless the recomputed
// digest equals c in all 32 octets.
Bytes Open(const Commitment& commitment, const Decommitment& decommitment,
           const HashFunction& hash = Sha256);

Digest CommitmentDigest(ByteView nonce, ByteView message,
                        const HashFunction& hash = Sha256);

}  // namespace saska
