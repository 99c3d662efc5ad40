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
#include <string_view>

#include "saska/bytes.h"
#include "saska/sha256.h"

namespace saska {

class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Fills `out` entirely or throws Error(kRngFailure).
  virtual void Fill(std::span<std::uint8_t> out) = 0;

  std::uint64_t NextU64();
  // Uniform on [0, bound) by rejection; bound must be nonzero.
  std::uint64_t Uniform(std::uint64_t bound);
};

// Operating-system entropy through OpenSSL's RAND_bytes.
class SystemRandom final : public RandomSource {
 public:
  void Fill(std::span<std::uint8_t> out) override;
};

// Deterministic SHA-256 counter-mode generator. The output stream depends
// only on the seed material, so fixed seeds reproduce byte-identical
// sessions on every platform. Used by tests, the simulator and the
// --seed option of the CLI.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed);
  explicit SeededRandom(ByteView seed_material);
  // Independent stream for (seed, index, label), e.g. one per trial and role.
  SeededRandom(std::uint64_t seed, std::uint64_t index, std::string_view label);

  void Fill(std::span<std::uint8_t> out) override;

 private:
  Digest key_{};
  std::uint64_t counter_ = 0;
  Digest block_{};
  std::size_t used_ = kDigestSize;
};

}  // namespace saska
