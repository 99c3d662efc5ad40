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

#include <condition_variable>
#include <deque>

#include "saska/error.h"
#include "saska/transport.h"
#include "saska/wire.h"

namespace saska {

std::string_view EventKindName(EventKind kind) {
  switch (kind) {
    case EventKind::kSent: return "sent";
    case EventKind::kDelivered: return "delivered";
    case EventKind::kReplaced: return "replaced";
    case EventKind::kDropped: return "dropped";
    case EventKind::kInjected: return "injected";
    case EventKind::kNote: return "note";
  }
  return "unknown";
}

void Transcript::Append(TranscriptEvent event) {
  std::lock_guard lock(mu_);
  event.seq = events_.size();
  if (event.kind == EventKind::kSent) ++frames_sent_;
  event.frames_seen = frames_sent_;
  events_.push_back(std::move(event));
}

void Transcript::Note(std::string text) {
  TranscriptEvent e;
  e.kind = EventKind::kNote;
  e.note = std::move(text);
  Append(std::move(e));
}

std::vector<TranscriptEvent> Transcript::Events() const {
  std::lock_guard lock(mu_);
  return events_;
}

std::size_t Transcript::frames_sent() const {
  std::lock_guard lock(mu_);
  return frames_sent_;
}

Bytes Transcript::Serialize() const {
  std::lock_guard lock(mu_);
  ByteWriter w;
  w.U32(static_cast<std::uint32_t>(events_.size()));
  for (const TranscriptEvent& e : events_) {
    w.U32(static_cast<std::uint32_t>(e.seq));
    w.U8(static_cast<std::uint8_t>(e.kind));
    w.U8(static_cast<std::uint8_t>(e.direction));
    w.U32(static_cast<std::uint32_t>(e.frames_seen));
    w.U32(static_cast<std::uint32_t>(e.frame.size()));
    w.Raw(e.frame);
    w.U32(static_cast<std::uint32_t>(e.note.size()));
    w.Raw(AsBytes(e.note));
  }
  return w.Take();
}

namespace {

// Shared between the two endpoints. The mutex serializes interposer calls in
// global send order.
struct Hub {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<Bytes> queues[2];  // indexed by Direction
  bool closed = false;
  Interposer interposer;
  std::shared_ptr<Transcript> transcript;
};

std::size_t Index(Direction d) { return static_cast<std::size_t>(d); }

class MemoryChannel final : public Channel {
 public:
  MemoryChannel(std::shared_ptr<Hub> hub, Direction outgoing)
      : hub_(std::move(hub)), outgoing_(outgoing) {}
  ~MemoryChannel() override { Close(); }

  void Send(ByteView frame) override {
    CheckFrame(frame);
    std::unique_lock lock(hub_->mu);
    if (hub_->closed) Throw(Errc::kChannelClosed, "channel closed");
    Transcript& log = *hub_->transcript;
    log.Append({.kind = EventKind::kSent,
                .direction = outgoing_,
                .frame = Bytes(frame.begin(), frame.end())});

    Verdict verdict = Deliver{};
    if (hub_->interposer) verdict = hub_->interposer(outgoing_, frame, log);

    if (std::holds_alternative<Deliver>(verdict)) {
      Push(outgoing_, Bytes(frame.begin(), frame.end()), EventKind::kDelivered);
    } else if (auto* r = std::get_if<Replace>(&verdict)) {
      Push(outgoing_, std::move(r->frame), EventKind::kReplaced);
    } else if (auto* i = std::get_if<Inject>(&verdict)) {
      Push(i->direction, std::move(i->frame), EventKind::kInjected);
    } else {
      log.Append({.kind = EventKind::kDropped, .direction = outgoing_});
    }
    hub_->cv.notify_all();
  }

  Bytes Recv() override {
    const Direction incoming =
        outgoing_ == Direction::kAtoB ? Direction::kBtoA : Direction::kAtoB;
    std::unique_lock lock(hub_->mu);
    auto& queue = hub_->queues[Index(incoming)];
    bool ready = hub_->cv.wait_for(lock, timeout(), [&] {
      return !queue.empty() || hub_->closed;
    });
    if (!queue.empty()) {
      Bytes frame = std::move(queue.front());
      queue.pop_front();
      return frame;
    }
    if (hub_->closed) Throw(Errc::kChannelClosed, "channel closed");
    (void)ready;
    Throw(Errc::kTimeout, "no frame within timeout");
  }

  void Close() override {
    std::lock_guard lock(hub_->mu);
    hub_->closed = true;
    hub_->cv.notify_all();
  }

 private:
  // Caller holds hub_->mu. An adversary may hand us anything; frames that
  // break the framing rules are still delivered so the receiver's decoder
  // is what rejects them.
  void Push(Direction d, Bytes frame, EventKind kind) {
    hub_->transcript->Append({.kind = kind, .direction = d, .frame = frame});
    hub_->queues[Index(d)].push_back(std::move(frame));
  }

  std::shared_ptr<Hub> hub_;
  Direction outgoing_;
};

}  // namespace

InterposedPair MakeInterposedPair(Interposer interposer) {
  auto hub = std::make_shared<Hub>();
  hub->interposer = std::move(interposer);
  hub->transcript = std::make_shared<Transcript>();
  InterposedPair pair;
  pair.a = std::make_unique<MemoryChannel>(hub, Direction::kAtoB);
  pair.b = std::make_unique<MemoryChannel>(hub, Direction::kBtoA);
  pair.transcript = hub->transcript;
  return pair;
}

}  // namespace saska
