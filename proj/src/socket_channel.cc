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

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <optional>
#include <utility>

#include "saska/error.h"
#include "saska/transport.h"
#include "saska/wire.h"

namespace saska {

namespace {

using Clock = std::chrono::steady_clock;

std::string ErrnoText(int err) { return std::strerror(err); }

class Fd {
 public:
  explicit Fd(int fd = -1) : fd_(fd) {}
  Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  Fd& operator=(Fd&& o) noexcept {
    if (this != &o) {
      Reset();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  ~Fd() { Reset(); }

  int get() const { return fd_; }
  int release() { return std::exchange(fd_, -1); }
  void Reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_;
};

// Milliseconds left until `deadline`, clamped at zero; -1 waits forever.
int Remaining(std::optional<Clock::time_point> deadline) {
  if (!deadline) return -1;
  auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
      *deadline - Clock::now());
  return left.count() < 0 ? 0 : static_cast<int>(left.count());
}

// Waits for `events` on fd. Throws kTimeout.
void WaitFor(int fd, short events, std::optional<Clock::time_point> deadline) {
  for (;;) {
    pollfd p{fd, events, 0};
    int rc = ::poll(&p, 1, Remaining(deadline));
    if (rc > 0) return;
    if (rc == 0) Throw(Errc::kTimeout, "socket wait timed out");
    if (errno != EINTR) Throw(Errc::kChannelClosed, "poll: " + ErrnoText(errno));
  }
}

class SocketChannel final : public Channel {
 public:
  explicit SocketChannel(Fd fd) : fd_(std::move(fd)) {
    int one = 1;
    ::setsockopt(fd_.get(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  }

  void Send(ByteView frame) override {
    CheckFrame(frame);
    if (fd_.get() < 0) Throw(Errc::kChannelClosed, "socket closed");
    std::size_t sent = 0;
    while (sent < frame.size()) {
      ssize_t n = ::send(fd_.get(), frame.data() + sent, frame.size() - sent,
                         MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        Throw(Errc::kChannelClosed, "send: " + ErrnoText(errno));
      }
      sent += static_cast<std::size_t>(n);
    }
  }

  Bytes Recv() override {
    if (fd_.get() < 0) Throw(Errc::kChannelClosed, "socket closed");
    std::optional<Clock::time_point> deadline;
    if (timeout().count() > 0) deadline = Clock::now() + timeout();
    Bytes frame(kFrameHeaderSize);
    ReadExact(frame.data(), kFrameHeaderSize, deadline);
    FrameType(frame);
    std::size_t body = DeclaredBodySize(frame);
    frame.resize(kFrameHeaderSize + body);
    ReadExact(frame.data() + kFrameHeaderSize, body, deadline);
    return frame;
  }

  void Close() override { fd_.Reset(); }

 private:
  void ReadExact(std::uint8_t* out, std::size_t len,
                 std::optional<Clock::time_point> deadline) {
    std::size_t got = 0;
    while (got < len) {
      WaitFor(fd_.get(), POLLIN, deadline);
      ssize_t n = ::recv(fd_.get(), out + got, len - got, 0);
      if (n == 0) Throw(Errc::kChannelClosed, "peer closed the connection");
      if (n < 0) {
        if (errno == EINTR || errno == EAGAIN) continue;
        Throw(Errc::kChannelClosed, "recv: " + ErrnoText(errno));
      }
      got += static_cast<std::size_t>(n);
    }
  }

  Fd fd_;
};

void SetNonBlocking(int fd, bool on) {
  int flags = ::fcntl(fd, F_GETFL, 0);
  ::fcntl(fd, F_SETFL, on ? (flags | O_NONBLOCK) : (flags & ~O_NONBLOCK));
}

struct AddrInfoDeleter {
  void operator()(addrinfo* ai) const { ::freeaddrinfo(ai); }
};

std::unique_ptr<addrinfo, AddrInfoDeleter> Resolve(const std::string& host,
                                                   std::uint16_t port,
                                                   bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  std::string service = std::to_string(port);
  int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res);
  if (rc != 0) {
    Throw(Errc::kConnectionRefused,
          "cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  return std::unique_ptr<addrinfo, AddrInfoDeleter>(res);
}

}  // namespace

std::unique_ptr<Channel> ConnectStream(const std::string& host,
                                       std::uint16_t port,
                                       std::chrono::milliseconds timeout) {
  auto addrs = Resolve(host, port, false);
  const auto deadline = Clock::now() + timeout;
  std::string last_error = "no address";
  for (addrinfo* ai = addrs.get(); ai != nullptr; ai = ai->ai_next) {
    Fd fd(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (fd.get() < 0) {
      last_error = ErrnoText(errno);
      continue;
    }
    SetNonBlocking(fd.get(), true);
    int rc = ::connect(fd.get(), ai->ai_addr, ai->ai_addrlen);
    if (rc < 0 && errno != EINPROGRESS) {
      last_error = ErrnoText(errno);
      continue;
    }
    if (rc < 0) {
      WaitFor(fd.get(), POLLOUT, deadline);
      int err = 0;
      socklen_t len = sizeof(err);
      ::getsockopt(fd.get(), SOL_SOCKET, SO_ERROR, &err, &len);
      if (err != 0) {
        last_error = ErrnoText(err);
        continue;
      }
    }
    SetNonBlocking(fd.get(), false);
    auto channel = std::make_unique<SocketChannel>(std::move(fd));
    channel->set_timeout(timeout);
    return channel;
  }
  Throw(Errc::kConnectionRefused,
        host + ":" + std::to_string(port) + ": " + last_error);
}

StreamListener StreamListener::Bind(std::uint16_t port,
                                    const std::string& host) {
  auto addrs = Resolve(host, port, true);
  std::string last_error = "no address";
  for (addrinfo* ai = addrs.get(); ai != nullptr; ai = ai->ai_next) {
    Fd fd(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (fd.get() < 0) {
      last_error = ErrnoText(errno);
      continue;
    }
    int one = 1;
    ::setsockopt(fd.get(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd.get(), ai->ai_addr, ai->ai_addrlen) < 0 ||
        ::listen(fd.get(), 1) < 0) {
      last_error = ErrnoText(errno);
      continue;
    }
    sockaddr_storage bound{};
    socklen_t len = sizeof(bound);
    ::getsockname(fd.get(), reinterpret_cast<sockaddr*>(&bound), &len);
    std::uint16_t actual =
        bound.ss_family == AF_INET6
            ? ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port)
            : ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
    return StreamListener(fd.release(), actual);
  }
  Throw(Errc::kConnectionRefused, "cannot listen: " + last_error);
}

StreamListener::StreamListener(StreamListener&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), port_(other.port_) {}

StreamListener& StreamListener::operator=(StreamListener&& other) noexcept {
  if (this != &other) {
    if (fd_ >= 0) ::close(fd_);
    fd_ = std::exchange(other.fd_, -1);
    port_ = other.port_;
  }
  return *this;
}

StreamListener::~StreamListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<Channel> StreamListener::Accept(
    std::chrono::milliseconds timeout) {
  std::optional<Clock::time_point> deadline;
  if (timeout.count() > 0) deadline = Clock::now() + timeout;
  for (;;) {
    WaitFor(fd_, POLLIN, deadline);
    int client = ::accept(fd_, nullptr, nullptr);
    if (client >= 0) return std::make_unique<SocketChannel>(Fd(client));
    if (errno != EINTR && errno != ECONNABORTED) {
      Throw(Errc::kChannelClosed, "accept: " + ErrnoText(errno));
    }
  }
}

}  // namespace saska
