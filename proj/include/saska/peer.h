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

// One side of an interactive pairing over a stream socket.

#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "saska/group.h"
#include "saska/params.h"
#include "saska/sas.h"
#include "saska/session.h"
#include "saska/wire.h"

namespace saska {

enum class ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kTransport = 2,
  kTamper = 3,
  kRejected = 4,
  kTimeout = 5,
};

ExitCode ExitCodeFor(Errc code);

struct PeerOptions {
  Role role = Role::kInitiator;  // connect = initiator, listen = responder
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  Identity identity{"peer"};
  int sas_bits = kDefaultSasBits;
  DhParams params = BuiltinParams(kDefaultParamSet);
  std::optional<std::uint64_t> seed;
  std::chrono::milliseconds timeout = kDefaultMessageTimeout;
};

// First 8 hex digits of SHA-256 over the key octets.
std::string KeyFingerprint(const SessionKey& key);

// Runs the protocol role, shows "<remote identity> : <SAS>", reads a y/n line
// from `in` and on acceptance prints the key fingerprint. A listener prints
// "listening on <port>" once bound.
ExitCode RunPeer(const PeerOptions& options, std::istream& in,
                 std::ostream& out, std::ostream& err);

}  // namespace saska
