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

#pragma once

#include <memory>
#include <string>

#include "pairsource/server.hpp"

namespace pairsource {

/// One request/response exchange with a server. Implementations must be safe
/// for sequential reuse; a client may hold one transport per server.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual WireMessage roundtrip(const WireMessage& request) = 0;
};

/// Calls the server core directly, but through the same byte path as TCP
/// (encode, handle_body, decode), so the two transports are
/// indistinguishable above the framing layer.
class InProcessTransport : public Transport {
 public:
  explicit InProcessTransport(std::shared_ptr<ServerCore> core) : core_(std::move(core)) {}
  WireMessage roundtrip(const WireMessage& request) override;

 private:
  std::shared_ptr<ServerCore> core_;
};

/// Blocking TCP client for the length-prefixed frame protocol.
class TcpTransport : public Transport {
 public:
  TcpTransport(const std::string& host, std::uint16_t port);
  ~TcpTransport() override;
  WireMessage roundtrip(const WireMessage& request) override;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Accepting server; one thread per connection, frames processed in order
/// per connection. Binding port 0 picks a free port.
class TcpServer {
 public:
  TcpServer(std::shared_ptr<ServerCore> core, const std::string& host = "127.0.0.1",
            std::uint16_t port = 0);
  ~TcpServer();
  std::uint16_t port() const;
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// In-process endpoint registry ("inproc:<key>").
void register_inproc(const std::string& key, std::shared_ptr<ServerCore> core);
void unregister_inproc(const std::string& key);
std::shared_ptr<ServerCore> find_inproc(const std::string& key);

/// A hosted server reachable at endpoint(); stops on destruction.
/// Endpoints: "inproc:<key>" or "tcp:<host>:<port>".
class RunningServer {
 public:
  RunningServer(const std::string& endpoint, const PairingParams& params,
                const BehaviorConfig& behavior);
  ~RunningServer();
  const std::string& endpoint() const { return endpoint_; }
  std::shared_ptr<ServerCore> core() const { return core_; }

 private:
  std::string endpoint_;
  std::shared_ptr<ServerCore> core_;
  std::unique_ptr<TcpServer> tcp_;
  std::string inproc_key_;
};

std::unique_ptr<RunningServer> serve(const std::string& endpoint, const PairingParams& params,
                                     const BehaviorConfig& behavior);

/// Connects to either endpoint form.
std::unique_ptr<Transport> connect_endpoint(const std::string& endpoint);

}  // namespace pairsource
