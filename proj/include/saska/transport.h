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

// Reliable ordered frame channels: an in-memory pair whose traffic passes
// through an adversary callback, and TCP stream sockets.

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "saska/bytes.h"

namespace saska {

class Channel {
 public:
  virtual ~Channel() = default;

  // Rejects malformed or oversize frames with kMalformedMessage before
  // anything is written. Throws kChannelClosed.
  virtual void Send(ByteView frame) = 0;
  // Next complete frame. Throws kTimeout, kChannelClosed or
  // kMalformedMessage.
  virtual Bytes Recv() = 0;
  virtual void Close() = 0;

  void set_timeout(std::chrono::milliseconds timeout) { timeout_ = timeout; }
  std::chrono::milliseconds timeout() const { return timeout_; }

 private:
  std::chrono::milliseconds timeout_{30000};
};

// kAtoB carries frames sent by the first endpoint (the initiator's).
enum class Direction : std::uint8_t { kAtoB = 0, kBtoA = 1 };

struct Deliver {};
struct Replace {
  Bytes frame{};
};
struct Drop {};
// Delivers `frame` in `direction` in place of the in-flight frame.
struct Inject {
  Bytes frame{};
  Direction direction;
};
using Verdict = std::variant<Deliver, Replace, Drop, Inject>;

enum class EventKind : std::uint8_t {
  kSent = 0,
  kDelivered = 1,
  kReplaced = 2,
  kDropped = 3,
  kInjected = 4,
  kNote = 5,
};

struct TranscriptEvent {
  std::size_t seq = 0;
  EventKind kind = EventKind::kNote;
  Direction direction = Direction::kAtoB;
  // Number of sent frames the adversary had seen when this event happened.
  std::size_t frames_seen = 0;
  Bytes frame{};
  std::string note{};

  bool operator==(const TranscriptEvent&) const = default;
};

std::string_view EventKindName(EventKind kind);

// Append-only, thread-safe event log.
class Transcript {
 public:
  void Append(TranscriptEvent event);
  void Note(std::string text);

  std::vector<TranscriptEvent> Events() const;
  std::size_t frames_sent() const;
  // Canonical byte serialization; equal transcripts serialize equally.
  Bytes Serialize() const;

 private:
  mutable std::mutex mu_;
  std::vector<TranscriptEvent> events_;
  std::size_t frames_sent_ = 0;
};

// Called once per sent frame, in global send order, with the transcript as
// it stands (so only frames already sent are visible).
using Interposer =
    std::function<Verdict(Direction, ByteView frame, const Transcript&)>;

struct InterposedPair {
  std::unique_ptr<Channel> a;  // initiator side
  std::unique_ptr<Channel> b;  // responder side
  std::shared_ptr<Transcript> transcript;
};

// A null interposer delivers everything unchanged.
InterposedPair MakeInterposedPair(Interposer interposer = nullptr);

// TCP client. Throws kConnectionRefused or kTimeout.
std::unique_ptr<Channel> ConnectStream(const std::string& host,
                                       std::uint16_t port,
                                       std::chrono::milliseconds timeout);

class StreamListener {
 public:
  // Port 0 picks an ephemeral port. Throws kConnectionRefused if the bind
  // fails.
  static StreamListener Bind(std::uint16_t port,
                             const std::string& host = "0.0.0.0");

  StreamListener(StreamListener&& other) noexcept;
  StreamListener& operator=(StreamListener&& other) noexcept;
  StreamListener(const StreamListener&) = delete;
  StreamListener& operator=(const StreamListener&) = delete;
  ~StreamListener();

  std::uint16_t port() const { return port_; }
  // Zero or negative timeout waits indefinitely. Throws kTimeout.
  std::unique_ptr<Channel> Accept(std::chrono::milliseconds timeout);

 private:
  StreamListener(int fd, std::uint16_t port) : fd_(fd), port_(port) {}

  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace saska
