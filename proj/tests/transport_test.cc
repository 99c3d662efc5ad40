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

#include "saska/transport.h"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include <chrono>
#include <thread>

#include "saska/error.h"
#include "saska/params.h"
#include "saska/session.h"
#include "test_util.h"

namespace saska {
namespace {

using namespace std::chrono_literals;
using testing::Config;

template <typename F>
Errc ErrorOf(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::kInvalidArgument;
}

Bytes SomeFrame(std::uint8_t fill) {
  Msg1 m;
  m.commitment.c.fill(fill);
  return EncodeFrame(m);
}

struct Outcome {
  Sas sas_a;
  Sas sas_b;
  std::optional<SessionKey> key_a;
  std::optional<SessionKey> key_b;
  std::string id_seen_by_a;
  std::string id_seen_by_b;
};

// Runs both peers on their own threads over the given channels. The user
// check is an identity callback that accepts whenever the strings match.
Outcome RunPeers(Channel& ca, Channel& cb, std::uint64_t seed) {
  Outcome out{Sas::FromValue(1, 0), Sas::FromValue(1, 0), {}, {}, {}, {}};
  std::optional<Sas> sa, sb;
  std::thread ta([&] {
    SeededRandom rng(seed);
    auto [a, m1] = Session::StartInitiator(Config("alice"), rng);
    ca.Send(m1);
    auto r = a.OnPayload(ca.Recv());
    ca.Send(r.msg3);
    sa = r.sas;
    out.id_seen_by_a = a.remote_payload()->identity.label();
  });
  std::thread tb([&] {
    SeededRandom rng(seed + 1);
    auto [b, m2] = Session::RespondToCommit(Config("bob"), rng, cb.Recv());
    cb.Send(m2);
    sb = b.OnDecommit(cb.Recv());
    out.id_seen_by_b = b.remote_payload()->identity.label();
  });
  ta.join();
  tb.join();
  out.sas_a = *sa;
  out.sas_b = *sb;
  return out;
}

TEST(MemoryChannelTest, HonestExchange) {
  InterposedPair pair = MakeInterposedPair();
  Outcome o = RunPeers(*pair.a, *pair.b, 100);
  EXPECT_EQ(o.sas_a, o.sas_b);
  EXPECT_EQ(o.id_seen_by_a, "bob");
  EXPECT_EQ(o.id_seen_by_b, "alice");
  EXPECT_EQ(pair.transcript->frames_sent(), 3u);
}

TEST(MemoryChannelTest, DeliversInOrder) {
  InterposedPair pair = MakeInterposedPair();
  for (int i = 0; i < 50; ++i) pair.a->Send(SomeFrame(static_cast<std::uint8_t>(i)));
  for (int i = 0; i < 50; ++i) {
    ASSERT_EQ(pair.b->Recv(), SomeFrame(static_cast<std::uint8_t>(i)));
  }
}

TEST(MemoryChannelTest, RecvTimesOut) {
  InterposedPair pair = MakeInterposedPair();
  pair.b->set_timeout(30ms);
  auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(ErrorOf([&] { pair.b->Recv(); }), Errc::kTimeout);
  EXPECT_GE(std::chrono::steady_clock::now() - start, 25ms);
}

TEST(MemoryChannelTest, RejectsBadFramesAtSend) {
  InterposedPair pair = MakeInterposedPair();
  Bytes huge = FromHex("0100010000");
  huge.resize(5 + 65536);
  EXPECT_EQ(ErrorOf([&] { pair.a->Send(huge); }), Errc::kMalformedMessage);
  EXPECT_EQ(ErrorOf([&] { pair.a->Send(FromHex("0900000000")); }), Errc::kMalformedMessage);
  EXPECT_EQ(pair.transcript->frames_sent(), 0u);
}

TEST(MemoryChannelTest, CloseWakesReceiver) {
  InterposedPair pair = MakeInterposedPair();
  std::thread t([&] {
    std::this_thread::sleep_for(20ms);
    pair.a->Close();
  });
  EXPECT_EQ(ErrorOf([&] { pair.b->Recv(); }), Errc::kChannelClosed);
  t.join();
  EXPECT_EQ(ErrorOf([&] { pair.a->Send(SomeFrame(0)); }), Errc::kChannelClosed);
}

TEST(MemoryChannelTest, DroppingEverythingTimesOutBothPeers) {
  InterposedPair pair =
      MakeInterposedPair([](Direction, ByteView, const Transcript&) -> Verdict { return Drop{}; });
  pair.a->set_timeout(50ms);
  pair.b->set_timeout(50ms);
  Errc ea{}, eb{};
  std::thread ta([&] {
    ea = ErrorOf([&] {
      SeededRandom rng(1);
      auto [a, m1] = Session::StartInitiator(Config("alice"), rng);
      pair.a->Send(m1);
      a.OnPayload(pair.a->Recv());
    });
  });
  std::thread tb([&] {
    eb = ErrorOf([&] {
      SeededRandom rng(2);
      Session::RespondToCommit(Config("bob"), rng, pair.b->Recv());
    });
  });
  ta.join();
  tb.join();
  EXPECT_EQ(ea, Errc::kTimeout);
  EXPECT_EQ(eb, Errc::kTimeout);
  auto events = pair.transcript->Events();
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[1].kind, EventKind::kDropped);
}

TEST(MemoryChannelTest, ReplacedNonceBreaksSasAgreement) {
  InterposedPair pair = MakeInterposedPair(
      [](Direction d, ByteView frame, const Transcript&) -> Verdict {
        if (d != Direction::kBtoA) return Deliver{};
        Msg2 m = std::get<Msg2>(DecodeFrame(frame));
        m.payload.auth_nonce =
            AuthNonce::FromValue(m.payload.auth_nonce.bits(), m.payload.auth_nonce.value() ^ 1);
        return Replace{EncodeFrame(m)};
      });
  Outcome o = RunPeers(*pair.a, *pair.b, 200);
  EXPECT_NE(o.sas_a, o.sas_b);
  EXPECT_EQ(o.sas_a.value() ^ o.sas_b.value(), 1u);
  auto events = pair.transcript->Events();
  EXPECT_EQ(std::count_if(events.begin(), events.end(),
                          [](const auto& e) { return e.kind == EventKind::kReplaced; }),
            1);
}

TEST(MemoryChannelTest, InjectRedirectsFrame) {
  InterposedPair pair = MakeInterposedPair(
      [](Direction, ByteView, const Transcript&) -> Verdict {
        return Inject{SomeFrame(0xee), Direction::kBtoA};
      });
  pair.a->Send(SomeFrame(1));
  EXPECT_EQ(pair.a->Recv(), SomeFrame(0xee));
  pair.b->set_timeout(10ms);
  EXPECT_EQ(ErrorOf([&] { pair.b->Recv(); }), Errc::kTimeout);
}

TEST(MemoryChannelTest, InterposerSeesOnlyFramesAlreadySent) {
  std::vector<std::size_t> seen;
  InterposedPair pair = MakeInterposedPair(
      [&seen](Direction, ByteView, const Transcript& log) -> Verdict {
        seen.push_back(log.frames_sent());
        return Deliver{};
      });
  RunPeers(*pair.a, *pair.b, 300);
  EXPECT_EQ(seen, (std::vector<std::size_t>{1, 2, 3}));
  std::size_t last = 0;
  for (const TranscriptEvent& e : pair.transcript->Events()) {
    EXPECT_GE(e.frames_seen, last);
    last = e.frames_seen;
  }
}

TEST(SocketChannelTest, LoopbackExchange) {
  StreamListener listener = StreamListener::Bind(0, "127.0.0.1");
  ASSERT_NE(listener.port(), 0);
  std::unique_ptr<Channel> server;
  std::thread accept([&] { server = listener.Accept(2000ms); });
  auto client = ConnectStream("127.0.0.1", listener.port(), 2000ms);
  accept.join();
  ASSERT_TRUE(server);
  Outcome o = RunPeers(*client, *server, 400);
  EXPECT_EQ(o.sas_a, o.sas_b);
}

TEST(SocketChannelTest, ClosedPortRefused) {
  std::uint16_t port;
  {
    StreamListener l = StreamListener::Bind(0, "127.0.0.1");
    port = l.port();
  }
  EXPECT_EQ(ErrorOf([&] { ConnectStream("127.0.0.1", port, 500ms); }),
            Errc::kConnectionRefused);
}

TEST(SocketChannelTest, ConnectTimeout) {
  std::unique_ptr<Channel> c;
  auto start = std::chrono::steady_clock::now();
  Errc e = ErrorOf([&] { c = ConnectStream("10.255.255.1", 9, 100ms); });
  if (c || e == Errc::kConnectionRefused) {
    GTEST_SKIP() << "network answers for unroutable addresses here";
  }
  EXPECT_EQ(e, Errc::kTimeout);
  EXPECT_LT(std::chrono::steady_clock::now() - start, 1000ms);
}

TEST(SocketChannelTest, AcceptAndRecvTimeouts) {
  StreamListener listener = StreamListener::Bind(0, "127.0.0.1");
  EXPECT_EQ(ErrorOf([&] { listener.Accept(30ms); }), Errc::kTimeout);
  auto client = ConnectStream("127.0.0.1", listener.port(), 1000ms);
  auto server = listener.Accept(1000ms);
  server->set_timeout(30ms);
  EXPECT_EQ(ErrorOf([&] { server->Recv(); }), Errc::kTimeout);
  client->Close();
  server->set_timeout(1000ms);
  EXPECT_EQ(ErrorOf([&] { server->Recv(); }), Errc::kChannelClosed);
}

TEST(SocketChannelTest, MalformedHeaderRejectedOnReceive) {
  StreamListener listener = StreamListener::Bind(0, "127.0.0.1");
  int raw = ::socket(AF_INET, SOCK_STREAM, 0);
  ASSERT_GE(raw, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(listener.port());
  ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
  ASSERT_EQ(::connect(raw, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)), 0);
  auto server = listener.Accept(1000ms);
  server->set_timeout(1000ms);

  const std::uint8_t bad_tag[] = {0x07, 0, 0, 0, 1, 0};
  ASSERT_EQ(::write(raw, bad_tag, sizeof(bad_tag)), 6);
  EXPECT_EQ(ErrorOf([&] { server->Recv(); }), Errc::kMalformedMessage);
  ::close(raw);
}

TEST(SocketChannelTest, OversizeLengthRejectedOnReceive) {
  StreamListener listener = StreamListener::Bind(0, "127.0.0.1");
  auto client = ConnectStream("127.0.0.1", listener.port(), 1000ms);
  auto server = listener.Accept(1000ms);
  server->set_timeout(1000ms);
  EXPECT_EQ(ErrorOf([&] { client->Send(FromHex("0100010000")); }), Errc::kMalformedMessage);
  client->Send(SomeFrame(3));
  EXPECT_EQ(server->Recv(), SomeFrame(3));
}

}  // namespace
}  // namespace saska
