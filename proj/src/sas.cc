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

#include "saska/sas.h"

namespace saska {

Sas ComputeSas(const AuthNonce& local, const AuthNonce& remote) {
  if (local.bits() != remote.bits()) {
    Throw(Errc::kLengthMismatch, "nonces differ in bit length");
  }
  return Sas::FromValue(local.bits(), local.value() ^ remote.value());
}

std::string FormatSas(const Sas& sas) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  const int digits = (sas.bits() + 3) / 4;
  std::string out(static_cast<std::size_t>(digits), '0');
  std::uint64_t v = sas.value();
  for (int i = digits - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0x0f];
    v >>= 4;
  }
  return out;
}

}  // namespace saska
