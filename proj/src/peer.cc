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

#include "saska/peer.h"

#include <iostream>
#include <memory>
#include <string>

#include "saska/error.h"
#include "saska/sha256.h"
#include "saska/transport.h"

namespace saska {

ExitCode ExitCodeFor(Errc code) {
  switch (code) {
    case Errc::kConnectionRefused:
    case Errc::kChannelClosed:
      return ExitCode::kTransport;
    case Errc::kTimeout:
      return ExitCode::kTimeout;
    case Errc::kOpenFailed:
    case Errc::kMalformedMessage:
    case Errc::kSubgroupCheckFailed:
    case Errc::kParameterMismatch:
    case Errc::kLengthMismatch:
      return ExitCode::kTamper;
    default:
      return ExitCode::kUsage;
  }
}

std::string KeyFingerprint(const SessionKey& key) {
  return ToHex(Sha256(key.Octets())).substr(0, 8);
}

namespace {

bool ReadConfirmation(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return false;
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
    line.pop_back();
  }
  return line == "y" || line == "Y" || line == "yes";
}

ExitCode Pair(const PeerOptions& options, Channel& channel, RandomSource& rng,
              std::istream& in, std::ostream& out) {
  const SessionConfig config{options.params, options.identity,
                             options.sas_bits};
  std::optional<Session> session;
  Sas sas = Sas::FromValue(options.sas_bits, 0);
  if (options.role == Role::kInitiator) {
    auto [s, msg1] = Session::StartInitiator(config, rng);
    session.emplace(std::move(s));
    channel.Send(msg1);
    Session::PayloadResult r = session->OnPayload(channel.Recv());
    channel.Send(r.msg3);
    sas = r.sas;
  } else {
    auto [s, msg2] = Session::RespondToCommit(config, rng, channel.Recv());
    session.emplace(std::move(s));
    channel.Send(msg2);
    sas = session->OnDecommit(channel.Recv());
  }

  out << session->remote_payload()->identity.label() << " : " << FormatSas(sas)
      << '\n'
      << "Does the other device show the same string? [y/n] " << std::flush;
  const bool accepted = ReadConfirmation(in);
  out << '\n';
  std::optional<SessionKey> key = session->Confirm(accepted);
  if (!key) {
    out << "pairing rejected\n";
    return ExitCode::kRejected;
  }
  out << "key fingerprint: " << KeyFingerprint(*key) << '\n';
  return ExitCode::kOk;
}

}  // namespace

ExitCode RunPeer(const PeerOptions& options, std::istream& in,
                 std::ostream& out, std::ostream& err) {
  try {
    std::unique_ptr<RandomSource> rng;
    if (options.seed) {
      rng = std::make_unique<SeededRandom>(*options.seed);
    } else {
      rng = std::make_unique<SystemRandom>();
    }

    std::unique_ptr<Channel> channel;
    if (options.role == Role::kInitiator) {
      channel = ConnectStream(options.host, options.port, options.timeout);
    } else {
      StreamListener listener = StreamListener::Bind(options.port);
      out << "listening on " << listener.port() << '\n' << std::flush;
      channel = listener.Accept(std::chrono::milliseconds(0));
    }
    channel->set_timeout(options.timeout);
    return Pair(options, *channel, *rng, in, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  }
}

}  // namespace saska
