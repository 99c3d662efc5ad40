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

#include "saska/random.h"

#include <openssl/rand.h>

#include <algorithm>
#include <limits>

#include "saska/error.h"

namespace saska {

namespace {

void PutU64(Sha256Stream& h, std::uint64_t v) {
  std::array<std::uint8_t, 8> b{};
  for (int i = 7; i >= 0; --i) {
    b[i] = static_cast<std::uint8_t>(v);
    v >>= 8;
  }
  h.Update(b);
}

constexpr std::string_view kDrbgLabel = "saska-drbg-v1";

}  // namespace

std::uint64_t RandomSource::NextU64() {
  std::array<std::uint8_t, 8> b{};
  Fill(b);
  std::uint64_t v = 0;
  for (std::uint8_t x : b) v = (v << 8) | x;
  return v;
}

std::uint64_t RandomSource::Uniform(std::uint64_t bound) {
  if (bound == 0) Throw(Errc::kInvalidArgument, "empty range");
  // Largest multiple of bound that fits; values at or above it are redrawn.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t v = NextU64();
    if (v < limit) return v % bound;
  }
}

void SystemRandom::Fill(std::span<std::uint8_t> out) {
  if (out.empty()) return;
  if (out.size() > static_cast<std::size_t>(std::numeric_limits<int>::max()) ||
      RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
    Throw(Errc::kRngFailure, "RAND_bytes failed");
  }
}

SeededRandom::SeededRandom(std::uint64_t seed) {
  Sha256Stream h;
  h.Update(AsBytes(kDrbgLabel));
  PutU64(h, seed);
  key_ = h.Final();
}

SeededRandom::SeededRandom(ByteView seed_material) {
  Sha256Stream h;
  h.Update(AsBytes(kDrbgLabel));
  h.Update(seed_material);
  key_ = h.Final();
}

SeededRandom::SeededRandom(std::uint64_t seed, std::uint64_t index,
                           std::string_view label) {
  Sha256Stream h;
  h.Update(AsBytes(kDrbgLabel));
  PutU64(h, seed);
  PutU64(h, index);
  h.Update(AsBytes(label));
  key_ = h.Final();
}

void SeededRandom::Fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    if (used_ == kDigestSize) {
      Sha256Stream h;
      h.Update(key_);
      PutU64(h, counter_++);
      block_ = h.Final();
      used_ = 0;
    }
    std::size_t n = std::min(out.size() - pos, kDigestSize - used_);
    std::copy_n(block_.begin() + used_, n, out.begin() + pos);
    used_ += n;
    pos += n;
  }
}

}  // namespace saska
