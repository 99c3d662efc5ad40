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

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "saska/adversary.h"
#include "saska/error.h"
#include "saska/params.h"
#include "saska/peer.h"

namespace {

using saska::ExitCode;

int Code(ExitCode c) { return static_cast<int>(c); }

struct PeerFlags {
  std::optional<std::uint16_t> listen_port;
  std::string connect;
  std::string id;
  int k = saska::kDefaultSasBits;
  std::string params;
  std::optional<std::uint64_t> seed;
  int timeout_ms = static_cast<int>(saska::kDefaultMessageTimeout.count());
};

struct SimFlags {
  std::string strategy = "impersonate-responder";
  std::string guess;
  std::uint64_t guess_value = 0;
  int k = saska::kDefaultSasBits;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 1;
  bool exhaustive = false;
  std::string params = std::string(saska::kTestParamSet);
  unsigned threads = 1;
  std::string format = "both";
};

saska::DhParams PeerParams(const std::string& flag) {
  if (!flag.empty()) return saska::ResolveParams(flag);
  if (const char* env = std::getenv(saska::kParamsEnvVar); env && *env) {
    return saska::LoadParamsFile(env);
  }
  return saska::BuiltinParams(saska::kDefaultParamSet);
}

int RunPeerCommand(const PeerFlags& flags) {
  saska::PeerOptions options;
  try {
    if (flags.listen_port) {
      options.role = saska::Role::kResponder;
      options.port = *flags.listen_port;
    } else {
      options.role = saska::Role::kInitiator;
      auto colon = flags.connect.rfind(':');
      if (colon == std::string::npos) {
        std::cerr << "--connect expects host:port\n";
        return Code(ExitCode::kUsage);
      }
      options.host = flags.connect.substr(0, colon);
      if (options.host.size() > 1 && options.host.front() == '[') {
        options.host = options.host.substr(1, options.host.size() - 2);
      }
      int port = std::stoi(flags.connect.substr(colon + 1));
      if (port <= 0 || port > 65535) {
        std::cerr << "port out of range\n";
        return Code(ExitCode::kUsage);
      }
      options.port = static_cast<std::uint16_t>(port);
    }
    options.identity = saska::Identity(flags.id);
    options.sas_bits = flags.k;
    options.params = PeerParams(flags.params);
    options.seed = flags.seed;
    options.timeout = std::chrono::milliseconds(flags.timeout_ms);
  } catch (const saska::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Code(ExitCode::kUsage);
  } catch (const std::logic_error& e) {
    std::cerr << "error: bad --connect port\n";
    return Code(ExitCode::kUsage);
  }
  return Code(saska::RunPeer(options, std::cin, std::cout, std::cerr));
}

int RunSimCommand(const SimFlags& flags) {
  auto kind = saska::ParseAttackKind(flags.strategy);
  if (!kind) {
    std::cerr << "unknown strategy: " << flags.strategy << '\n';
    return Code(ExitCode::kUsage);
  }
  std::optional<saska::GuessRule> rule;
  if (!flags.guess.empty()) {
    rule = saska::ParseGuessRule(flags.guess);
    if (!rule) {
      std::cerr << "unknown guess rule: " << flags.guess << '\n';
      return Code(ExitCode::kUsage);
    }
  }

  std::vector<saska::SimReport> reports;
  try {
    const saska::DhParams params = saska::ResolveParams(flags.params);
    saska::AttackStrategy strategy{*kind, saska::GuessRule::kFixed,
                                   flags.guess_value};
    if (flags.exhaustive) {
      strategy.guess_rule = rule.value_or(saska::GuessRule::kFixed);
      auto fraction = saska::ExhaustiveAttackSuccess(strategy, params, flags.k,
                                                     flags.seed);
      reports.push_back(saska::MakeExhaustiveReport(strategy, flags.k, fraction));
    }
    if (!flags.exhaustive || flags.trials) {
      strategy.guess_rule = rule.value_or(saska::GuessRule::kUniform);
      auto estimate = saska::EstimateAttackSuccess(
          strategy, params, flags.k, flags.trials.value_or(10000), flags.seed,
          flags.threads);
      reports.push_back(saska::MakeMonteCarloReport(strategy, flags.k, estimate));
    }
  } catch (const saska::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return Code(ExitCode::kUsage);
  }

  if (flags.format != "kv") std::cout << saska::FormatReportTable(reports);
  if (flags.format != "table") {
    for (const auto& r : reports) std::cout << saska::FormatReportKeyValue(r) << '\n';
  }
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pair two devices with a short authentication string, or "
               "simulate man-in-the-middle attacks against the pairing."};
  app.require_subcommand(0, 1);

  PeerFlags peer;
  auto* listen = app.add_option("--listen", peer.listen_port,
                                "Wait for a peer on this port (responder)");
  auto* connect = app.add_option("--connect", peer.connect,
                                 "Connect to host:port (initiator)");
  listen->excludes(connect);
  app.add_option("--id", peer.id, "Identity shown to the other user");
  app.add_option("--k", peer.k, "Authentication string length in bits")
      ->check(CLI::Range(1, 64));
  app.add_option("--params", peer.params,
                 "Parameter set name or file (default $SASKA_PARAMS, then d2d-40)");
  app.add_option("--seed", peer.seed, "Deterministic randomness (testing only)");
  app.add_option("--timeout-ms", peer.timeout_ms, "Per-message timeout")
      ->check(CLI::PositiveNumber);

  SimFlags sim;
  auto* sim_cmd = app.add_subcommand("sim", "Measure attack success rates");
  sim_cmd->add_option("--strategy", sim.strategy,
                      "honest | impersonate-initiator | impersonate-responder "
                      "| full-mitm | relay-share-swap");
  sim_cmd->add_option("--guess", sim.guess, "fixed | uniform | adaptive");
  sim_cmd->add_option("--guess-value", sim.guess_value, "Value for --guess fixed");
  sim_cmd->add_option("--k", sim.k, "Authentication string length in bits")
      ->check(CLI::Range(1, 64));
  sim_cmd->add_option("--trials", sim.trials, "Monte Carlo trials");
  sim_cmd->add_option("--seed", sim.seed, "Experiment seed");
  sim_cmd->add_flag("--exhaustive", sim.exhaustive,
                    "Enumerate every initiator nonce (k <= 16)");
  sim_cmd->add_option("--params", sim.params, "Parameter set name or file");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads");
  sim_cmd->add_option("--format", sim.format, "table | kv | both")
      ->check(CLI::IsMember({"table", "kv", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return Code(ExitCode::kUsage);
  }

  if (sim_cmd->parsed()) return RunSimCommand(sim);
  if (!peer.listen_port && peer.connect.empty()) {
    std::cerr << "one of --listen, --connect or the sim subcommand is required\n"
              << app.help();
    return Code(ExitCode::kUsage);
  }
  if (peer.id.empty()) {
    std::cerr << "--id is required\n";
    return Code(ExitCode::kUsage);
  }
  return RunPeerCommand(peer);
}
