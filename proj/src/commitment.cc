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

#include "saska/commitment.h"

#include <algorithm>

#include "saska/error.h"

namespace saska {

Digest CommitmentDigest(ByteView nonce, ByteView message,
                        const HashFunction& hash) {
  Bytes input;
  input.reserve(kDomainTag.size() + nonce.size() + message.size());
  input.insert(input.end(), kDomainTag.begin(), kDomainTag.end());
  input.insert(input.end(), nonce.begin(), nonce.end());
  input.insert(input.end(), message.begin(), message.end());
  return hash(input);
}

CommitPair Commit(ByteView message, RandomSource& rng,
                  const HashFunction& hash) {
  if (message.empty()) Throw(Errc::kEmptyMessage, "nothing to commit to");
  CommitPair out;
  rng.Fill(out.decommitment.nonce);
  out.decommitment.message.assign(message.begin(), message.end());
  out.commitment.c = CommitmentDigest(out.decommitment.nonce, message, hash);
  return out;
}

Bytes Open(const Commitment& commitment, const Decommitment& decommitment,
           const HashFunction& hash) {
  Digest d = CommitmentDigest(decommitment.nonce, decommitment.message, hash);
  if (!std::equal(d.begin(), d.end(), commitment.c.begin())) {
    Throw(Errc::kOpenFailed, "decommitment does not match commitment");
  }
  return decommitment.message;
}

}  // namespace saska
