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

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pairsource/bpsm.hpp"
#include "pairsource/sm.hpp"

namespace pairsource {

/// Bit-exact wire format.
///
/// Frame:   4-byte big-endian body length, then the body.
/// Body:    version (1 byte) | kind (1 byte) | tag (8 bytes, big-endian) | payload.
/// Payload: a message-specific sequence of items:
///   int    -> 4-byte big-endian length, then that many big-endian magnitude
///             bytes (minimal: no leading zero byte; zero encodes as length 0)
///   point  -> flag byte (0 = identity, 1 = affine), then x and y as ints
///   gt     -> c0 and c1 as ints
///   bytes  -> 4-byte big-endian length, then raw bytes
///
/// Item order per kind:
///   sm_q1     N, a', b', P', c1, r1, r2
///   sm_q2     N, a', b', P', c2
///   sm_resp   point list to exhaustion (U1 answers two: Q1, Q3; U2 one: Q2)
///   pair_q    left point, right point
///   pair_resp gt value
///   error     code as int, message as bytes

enum class MsgKind : std::uint8_t {
  sm_q1 = 1,
  sm_q2 = 2,
  sm_resp = 3,
  pair_q = 4,
  pair_resp = 5,
  error = 6,
};

constexpr std::uint8_t kWireVersion = 1;

enum class WireError : std::uint32_t {
  malformed = 1,
  unsupported_version = 2,
  computation_failed = 3,
  internal = 4,
};

struct WireMessage {
  std::uint8_t version = kWireVersion;
  MsgKind kind = MsgKind::error;
  std::uint64_t tag = 0;
  std::vector<std::uint8_t> payload;
};

/// Raised on any framing or payload shape violation while decoding.
class MalformedMessage : public Error {
 public:
  using Error::Error;
};

std::vector<std::uint8_t> encode_frame(const WireMessage& m);
/// Parses one frame; `bytes` must be exactly one frame.
WireMessage decode_frame(std::span<const std::uint8_t> bytes);
/// Parses a body (frame minus the length prefix).
WireMessage decode_body(std::span<const std::uint8_t> body);

/// Integer / point coordinates without a ring attached; the receiving side
/// binds them to its modulus.
struct RawPoint {
  bool infinity = true;
  mpz_class x, y;
};

class PayloadWriter {
 public:
  void put_int(const mpz_class& v);
  void put_point(const Point& p);
  void put_raw_point(const RawPoint& p);
  void put_gt(const GtElement& v);
  void put_bytes(std::span<const std::uint8_t> b);
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  std::vector<std::uint8_t> buf_;
};

class PayloadReader {
 public:
  explicit PayloadReader(std::span<const std::uint8_t> data) : data_(data) {}
  mpz_class get_int();
  RawPoint get_point();
  std::pair<mpz_class, mpz_class> get_gt();
  std::vector<std::uint8_t> get_bytes();
  bool at_end() const { return pos_ == data_.size(); }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

WireMessage encode_sm_q1(std::uint64_t tag, const SMQueryU1& q);
WireMessage encode_sm_q2(std::uint64_t tag, const SMQueryU2& q);
SMQueryU1 decode_sm_q1(const WireMessage& m);
SMQueryU2 decode_sm_q2(const WireMessage& m);

WireMessage encode_sm_resp(std::uint64_t tag, std::span<const RawPoint> points);
std::vector<RawPoint> decode_sm_resp(const WireMessage& m);

WireMessage encode_pair_q(std::uint64_t tag, const RawPoint& left, const RawPoint& right);
std::pair<RawPoint, RawPoint> decode_pair_q(const WireMessage& m);

WireMessage encode_pair_resp(std::uint64_t tag, const GtElement& v);
std::pair<mpz_class, mpz_class> decode_pair_resp(const WireMessage& m);

WireMessage encode_error(std::uint64_t tag, WireError code, const std::string& text);
std::pair<WireError, std::string> decode_error(const WireMessage& m);

RawPoint to_raw(const Point& p);

}  // namespace pairsource
