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

#include <stdexcept>
#include <string>
#include <string_view>

namespace saska {

enum class Errc {
  kInvalidArgument,
  kNotPrime,
  kOrderMismatch,
  kBadGenerator,
  kRngFailure,
  kSubgroupCheckFailed,
  kEmptyMessage,
  kOpenFailed,
  kMalformedMessage,
  kParameterMismatch,
  kWrongPhase,
  kLengthMismatch,
  kKTooLarge,
  kConnectionRefused,
  kTimeout,
  kChannelClosed,
};

std::string_view ErrcName(Errc code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void Throw(Errc code, const std::string& detail = {});

}  // namespace saska
