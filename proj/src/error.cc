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

#include "saska/error.h"

namespace saska {

std::string_view ErrcName(Errc code) {
  switch (code) {
    case Errc::kInvalidArgument: return "InvalidArgument";
    case Errc::kNotPrime: return "NotPrime";
    case Errc::kOrderMismatch: return "OrderMismatch";
    case Errc::kBadGenerator: return "BadGenerator";
    case Errc::kRngFailure: return "RngFailure";
    case Errc::kSubgroupCheckFailed: return "SubgroupCheckFailed";
    case Errc::kEmptyMessage: return "EmptyMessage";
    case Errc::kOpenFailed: return "OpenFailed";
    case Errc::kMalformedMessage: return "MalformedMessage";
    case Errc::kParameterMismatch: return "ParameterMismatch";
    case Errc::kWrongPhase: return "WrongPhase";
    case Errc::kLengthMismatch: return "LengthMismatch";
    case Errc::kKTooLarge: return "KTooLarge";
    case Errc::kConnectionRefused: return "ConnectionRefused";
    case Errc::kTimeout: return "Timeout";
    case Errc::kChannelClosed: return "ChannelClosed";
  }
  return "Unknown";
}

namespace {

std::string Describe(Errc code, const std::string& detail) {
  std::string what(ErrcName(code));
  if (!detail.empty()) {
    what += ": ";
    what += detail;
  }
  return what;
}

}  // namespace

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(Describe(code, detail)), code_(code) {}

void Throw(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace saska
