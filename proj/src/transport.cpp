/*
 * Copyright 2026 The Pairsource Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pairsource/transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <cstring>
#include <mutex>
#include <thread>
#include <unordered_map>
#include <vector>

namespace pairsource {

WireMessage InProcessTransport::roundtrip(const WireMessage& request) {
  auto frame = encode_frame(request);
  std::span<const std::uint8_t> body(frame.data() + 4, frame.size() - 4);
  auto reply_body = core_->handle_body(body);
  return decode_body(reply_body);
}

namespace {

void write_all(int fd, const std::uint8_t* data, std::size_t len) {
  while (len > 0) {
    ssize_t n = ::send(fd, data, len, MSG_NOSIGNAL);
    if (n <= 0) throw TransportError("send failed");
    data += n;
    len -= static_cast<std::size_t>(n);
  }
}

bool read_all(int fd, std::uint8_t* data, std::size_t len) {
  while (len > 0) {
    ssize_t n = ::recv(fd, data, len, 0);
    if (n == 0) return false;  // peer closed
    if (n < 0) throw TransportError("recv failed");
    data += n;
    len -= static_cast<std::size_t>(n);
  }
  return true;
}

constexpr std::uint32_t kMaxFrame = 64u << 20;

bool read_frame_body(int fd, std::vector<std::uint8_t>& body) {
  std::uint8_t hdr[4];
  if (!read_all(fd, hdr, 4)) return false;
  std::uint32_t len = (std::uint32_t(hdr[0]) << 24) | (std::uint32_t(hdr[1]) << 16) |
                      (std::uint32_t(hdr[2]) << 8) | std::uint32_t(hdr[3]);
  if (len > kMaxFrame) throw TransportError("oversized frame");
  body.resize(len);
  if (len > 0 && !read_all(fd, body.data(), len)) throw TransportError("truncated frame");
  return true;
}

void write_frame_body(int fd, std::span<const std::uint8_t> body) {
  std::uint8_t hdr[4] = {static_cast<std::uint8_t>(body.size() >> 24),
                         static_cast<std::uint8_t>(body.size() >> 16),
                         static_cast<std::uint8_t>(body.size() >> 8),
                         static_cast<std::uint8_t>(body.size())};
  write_all(fd, hdr, 4);
  if (!body.empty()) write_all(fd, body.data(), body.size());
}

}  // namespace

struct TcpTransport::Impl {
  int fd = -1;
  std::mutex mu;
};

TcpTransport::TcpTransport(const std::string& host, std::uint16_t port)
    : impl_(std::make_unique<Impl>()) {
  impl_->fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (impl_->fd < 0) throw TransportError("socket() failed");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(impl_->fd);
    throw TransportError("bad host address: " + host);
  }
  if (::connect(impl_->fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(impl_->fd);
    throw TransportError("connect failed: " + host + ":" + std::to_string(port));
  }
}

TcpTransport::~TcpTransport() {
  if (impl_ && impl_->fd >= 0) ::close(impl_->fd);
}

WireMessage TcpTransport::roundtrip(const WireMessage& request) {
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto frame = encode_frame(request);
  write_all(impl_->fd, frame.data(), frame.size());
  std::vector<std::uint8_t> body;
  if (!read_frame_body(impl_->fd, body)) throw TransportError("connection closed by server");
  return decode_body(body);
}

struct TcpServer::Impl {
  std::shared_ptr<ServerCore> core;
  int listen_fd = -1;
  std::uint16_t port = 0;
  std::atomic<bool> stopping{false};
  std::thread accept_thread;
  std::mutex conn_mu;
  std::vector<int> conn_fds;
  std::vector<std::thread> conn_threads;

  void serve_connection(int fd) {
    try {
      std::vector<std::uint8_t> body;
      while (read_frame_body(fd, body)) {
        auto reply = core->handle_body(body);
        write_frame_body(fd, reply);
      }
    } catch (const std::exception&) {
      // connection drops are normal shutdown paths
    }
    ::close(fd);
  }

  void accept_loop() {
    for (;;) {
      int fd = ::accept(listen_fd, nullptr, nullptr);
      if (fd < 0) {
        if (stopping.load()) return;
        continue;
      }
      std::lock_guard<std::mutex> lock(conn_mu);
      conn_fds.push_back(fd);
      conn_threads.emplace_back([this, fd] { serve_connection(fd); });
    }
  }
};

TcpServer::TcpServer(std::shared_ptr<ServerCore> core, const std::string& host,
                     std::uint16_t port)
    : impl_(std::make_unique<Impl>()) {
  impl_->core = std::move(core);
  impl_->listen_fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (impl_->listen_fd < 0) throw TransportError("socket() failed");
  int on = 1;
  ::setsockopt(impl_->listen_fd, SOL_SOCKET, SO_REUSEADDR, &on, sizeof(on));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(impl_->listen_fd);
    throw TransportError("bad bind address: " + host);
  }
  if (::bind(impl_->listen_fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(impl_->listen_fd, 16) != 0) {
    ::close(impl_->listen_fd);
    throw TransportError("bind/listen failed on " + host + ":" + std::to_string(port));
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(impl_->listen_fd, reinterpret_cast<sockaddr*>(&bound), &len);
  impl_->port = ntohs(bound.sin_port);
  impl_->accept_thread = std::thread([this] { impl_->accept_loop(); });
}

TcpServer::~TcpServer() { stop(); }

std::uint16_t TcpServer::port() const { return impl_->port; }

void TcpServer::stop() {
  if (!impl_ || impl_->stopping.exchange(true)) return;
  ::shutdown(impl_->listen_fd, SHUT_RDWR);
  ::close(impl_->listen_fd);
  if (impl_->accept_thread.joinable()) impl_->accept_thread.join();
  {
    std::lock_guard<std::mutex> lock(impl_->conn_mu);
    for (int fd : impl_->conn_fds) ::shutdown(fd, SHUT_RDWR);
  }
  for (auto& t : impl_->conn_threads)
    if (t.joinable()) t.join();
}

namespace {

std::mutex g_registry_mu;
std::unordered_map<std::string, std::shared_ptr<ServerCore>> g_registry;

struct Endpoint {
  bool tcp = false;
  std::string key_or_host;
  std::uint16_t port = 0;
};

Endpoint parse_endpoint(const std::string& s) {
  Endpoint e;
  if (s.rfind("inproc:", 0) == 0) {
    e.key_or_host = s.substr(7);
    if (e.key_or_host.empty()) throw TransportError("empty inproc key");
    return e;
  }
  if (s.rfind("tcp:", 0) == 0) {
    std::string rest = s.substr(4);
    auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw TransportError("tcp endpoint needs host:port");
    e.tcp = true;
    e.key_or_host = rest.substr(0, colon);
    e.port = static_cast<std::uint16_t>(std::stoul(rest.substr(colon + 1)));
    return e;
  }
  throw TransportError("endpoint must start with inproc: or tcp:");
}

}  // namespace

void register_inproc(const std::string& key, std::shared_ptr<ServerCore> core) {
  std::lock_guard<std::mutex> lock(g_registry_mu);
  g_registry[key] = std::move(core);
}

void unregister_inproc(const std::string& key) {
  std::lock_guard<std::mutex> lock(g_registry_mu);
  g_registry.erase(key);
}

std::shared_ptr<ServerCore> find_inproc(const std::string& key) {
  std::lock_guard<std::mutex> lock(g_registry_mu);
  auto it = g_registry.find(key);
  return it == g_registry.end() ? nullptr : it->second;
}

RunningServer::RunningServer(const std::string& endpoint, const PairingParams& params,
                             const BehaviorConfig& behavior)
    : core_(std::make_shared<ServerCore>(params, behavior)) {
  Endpoint e = parse_endpoint(endpoint);
  if (e.tcp) {
    tcp_ = std::make_unique<TcpServer>(core_, e.key_or_host, e.port);
    endpoint_ = "tcp:" + e.key_or_host + ":" + std::to_string(tcp_->port());
  } else {
    inproc_key_ = e.key_or_host;
    register_inproc(inproc_key_, core_);
    endpoint_ = endpoint;
  }
}

RunningServer::~RunningServer() {
  if (!inproc_key_.empty()) unregister_inproc(inproc_key_);
}

std::unique_ptr<RunningServer> serve(const std::string& endpoint, const PairingParams& params,
                                     const BehaviorConfig& behavior) {
  return std::make_unique<RunningServer>(endpoint, params, behavior);
}

std::unique_ptr<Transport> connect_endpoint(const std::string& endpoint) {
  Endpoint e = parse_endpoint(endpoint);
  if (e.tcp) return std::make_unique<TcpTransport>(e.key_or_host, e.port);
  auto core = find_inproc(e.key_or_host);
  if (!core) throw TransportError("no in-process server at key: " + e.key_or_host);
  return std::make_unique<InProcessTransport>(std::move(core));
}

}  // namespace pairsource
