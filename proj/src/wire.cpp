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

#include "pairsource/wire.hpp"

namespace pairsource {

namespace {

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_be64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::vector<std::uint8_t> int_magnitude(const mpz_class& v) {
  if (v < 0) throw Error("wire integers are unsigned");
  std::vector<std::uint8_t> out;
  if (v == 0) return out;
  std::size_t count = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  out.resize(count);
  std::size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, v.get_mpz_t());
  out.resize(written);
  return out;
}

}  // namespace

void PayloadWriter::put_int(const mpz_class& v) {
  auto mag = int_magnitude(v);
  put_be32(buf_, static_cast<std::uint32_t>(mag.size()));
  buf_.insert(buf_.end(), mag.begin(), mag.end());
}

void PayloadWriter::put_point(const Point& p) { put_raw_point(to_raw(p)); }

void PayloadWriter::put_raw_point(const RawPoint& p) {
  buf_.push_back(p.infinity ? 0 : 1);
  if (!p.infinity) {
    put_int(p.x);
    put_int(p.y);
  }
}

void PayloadWriter::put_gt(const GtElement& v) {
  put_int(v.value().c0().residue());
  put_int(v.value().c1().residue());
}

void PayloadWriter::put_bytes(std::span<const std::uint8_t> b) {
  put_be32(buf_, static_cast<std::uint32_t>(b.size()));
  buf_.insert(buf_.end(), b.begin(), b.end());
}

mpz_class PayloadReader::get_int() {
  auto bytes = get_bytes();
  mpz_class out = 0;
  if (!bytes.empty()) mpz_import(out.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  return out;
}

RawPoint PayloadReader::get_point() {
  if (pos_ >= data_.size()) throw MalformedMessage("truncated point flag");
  std::uint8_t flag = data_[pos_++];
  if (flag == 0) return RawPoint{};
  if (flag != 1) throw MalformedMessage("bad point flag");
  RawPoint p;
  p.infinity = false;
  p.x = get_int();
  p.y = get_int();
  return p;
}

std::pair<mpz_class, mpz_class> PayloadReader::get_gt() {
  mpz_class c0 = get_int();
  mpz_class c1 = get_int();
  return {std::move(c0), std::move(c1)};
}

std::vector<std::uint8_t> PayloadReader::get_bytes() {
  if (pos_ + 4 > data_.size()) throw MalformedMessage("truncated length prefix");
  std::uint32_t len = (std::uint32_t(data_[pos_]) << 24) | (std::uint32_t(data_[pos_ + 1]) << 16) |
                      (std::uint32_t(data_[pos_ + 2]) << 8) | std::uint32_t(data_[pos_ + 3]);
  pos_ += 4;
  if (pos_ + len > data_.size()) throw MalformedMessage("truncated field body");
  std::vector<std::uint8_t> out(data_.begin() + pos_, data_.begin() + pos_ + len);
  pos_ += len;
  return out;
}

std::vector<std::uint8_t> encode_frame(const WireMessage& m) {
  std::vector<std::uint8_t> out;
  std::size_t body_len = 1 + 1 + 8 + m.payload.size();
  put_be32(out, static_cast<std::uint32_t>(body_len));
  out.push_back(m.version);
  out.push_back(static_cast<std::uint8_t>(m.kind));
  put_be64(out, m.tag);
  out.insert(out.end(), m.payload.begin(), m.payload.end());
  return out;
}

WireMessage decode_body(std::span<const std::uint8_t> body) {
  if (body.size() < 10) throw MalformedMessage("body too short");
  WireMessage m;
  m.version = body[0];
  std::uint8_t kind = body[1];
  if (kind < 1 || kind > 6) throw MalformedMessage("unknown message kind");
  m.kind = static_cast<MsgKind>(kind);
  m.tag = 0;
  for (int i = 0; i < 8; ++i) m.tag = (m.tag << 8) | body[2 + i];
  m.payload.assign(body.begin() + 10, body.end());
  return m;
}

WireMessage decode_frame(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw MalformedMessage("frame too short");
  std::uint32_t len = (std::uint32_t(bytes[0]) << 24) | (std::uint32_t(bytes[1]) << 16) |
                      (std::uint32_t(bytes[2]) << 8) | std::uint32_t(bytes[3]);
  if (bytes.size() != 4u + len) throw MalformedMessage("frame length mismatch");
  return decode_body(bytes.subspan(4));
}

RawPoint to_raw(const Point& p) {
  RawPoint r;
  if (p.is_infinity()) return r;
  r.infinity = false;
  r.x = p.x().residue();
  r.y = p.y().residue();
  return r;
}

WireMessage encode_sm_q1(std::uint64_t tag, const SMQueryU1& q) {
  PayloadWriter w;
  w.put_int(q.n.value());
  w.put_int(q.a.residue());
  w.put_int(q.b.residue());
  w.put_point(q.p_blinded);
  w.put_int(q.c1);
  w.put_int(q.r1);
  w.put_int(q.r2);
  return WireMessage{kWireVersion, MsgKind::sm_q1, tag, w.take()};
}

WireMessage encode_sm_q2(std::uint64_t tag, const SMQueryU2& q) {
  PayloadWriter w;
  w.put_int(q.n.value());
  w.put_int(q.a.residue());
  w.put_int(q.b.residue());
  w.put_point(q.p_blinded);
  w.put_int(q.c2);
  return WireMessage{kWireVersion, MsgKind::sm_q2, tag, w.take()};
}

namespace {

Point bind_point(const RawPoint& raw, const Modulus& m) {
  if (raw.infinity) return Point::infinity();
  return Point(RingElement(raw.x, m), RingElement(raw.y, m));
}

}  // namespace

SMQueryU1 decode_sm_q1(const WireMessage& m) {
  if (m.kind != MsgKind::sm_q1) throw MalformedMessage("kind != sm_q1");
  PayloadReader r(m.payload);
  mpz_class n_val = r.get_int();
  if (n_val < 2) throw MalformedMessage("bad modulus");
  Modulus n = Modulus::composite(n_val);
  RingElement a(r.get_int(), n), b(r.get_int(), n);
  Point p = bind_point(r.get_point(), n);
  SMQueryU1 q{n, std::move(a), std::move(b), std::move(p), r.get_int(), r.get_int(), r.get_int()};
  if (!r.at_end()) throw MalformedMessage("trailing bytes");
  return q;
}

SMQueryU2 decode_sm_q2(const WireMessage& m) {
  if (m.kind != MsgKind::sm_q2) throw MalformedMessage("kind != sm_q2");
  PayloadReader r(m.payload);
  mpz_class n_val = r.get_int();
  if (n_val < 2) throw MalformedMessage("bad modulus");
  Modulus n = Modulus::composite(n_val);
  RingElement a(r.get_int(), n), b(r.get_int(), n);
  Point p = bind_point(r.get_point(), n);
  SMQueryU2 q{n, std::move(a), std::move(b), std::move(p), r.get_int()};
  if (!r.at_end()) throw MalformedMessage("trailing bytes");
  return q;
}

WireMessage encode_sm_resp(std::uint64_t tag, std::span<const RawPoint> points) {
  PayloadWriter w;
  for (const RawPoint& p : points) w.put_raw_point(p);
  return WireMessage{kWireVersion, MsgKind::sm_resp, tag, w.take()};
}

std::vector<RawPoint> decode_sm_resp(const WireMessage& m) {
  if (m.kind != MsgKind::sm_resp) throw MalformedMessage("kind != sm_resp");
  PayloadReader r(m.payload);
  std::vector<RawPoint> out;
  while (!r.at_end()) out.push_back(r.get_point());
  return out;
}

WireMessage encode_pair_q(std::uint64_t tag, const RawPoint& left, const RawPoint& right) {
  PayloadWriter w;
  w.put_raw_point(left);
  w.put_raw_point(right);
  return WireMessage{kWireVersion, MsgKind::pair_q, tag, w.take()};
}

std::pair<RawPoint, RawPoint> decode_pair_q(const WireMessage& m) {
  if (m.kind != MsgKind::pair_q) throw MalformedMessage("kind != pair_q");
  PayloadReader r(m.payload);
  RawPoint left = r.get_point();
  RawPoint right = r.get_point();
  if (!r.at_end()) throw MalformedMessage("trailing bytes");
  return {std::move(left), std::move(right)};
}

WireMessage encode_pair_resp(std::uint64_t tag, const GtElement& v) {
  PayloadWriter w;
  w.put_gt(v);
  return WireMessage{kWireVersion, MsgKind::pair_resp, tag, w.take()};
}

std::pair<mpz_class, mpz_class> decode_pair_resp(const WireMessage& m) {
  if (m.kind != MsgKind::pair_resp) throw MalformedMessage("kind != pair_resp");
  PayloadReader r(m.payload);
  auto gt = r.get_gt();
  if (!r.at_end()) throw MalformedMessage("trailing bytes");
  return gt;
}

WireMessage encode_error(std::uint64_t tag, WireError code, const std::string& text) {
  PayloadWriter w;
  w.put_int(static_cast<std::uint32_t>(code));
  w.put_bytes(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  return WireMessage{kWireVersion, MsgKind::error, tag, w.take()};
}

std::pair<WireError, std::string> decode_error(const WireMessage& m) {
  if (m.kind != MsgKind::error) throw MalformedMessage("kind != error");
  PayloadReader r(m.payload);
  mpz_class code = r.get_int();
  auto bytes = r.get_bytes();
  std::string text(bytes.begin(), bytes.end());
  unsigned long c = code.fits_ulong_p() ? code.get_ui() : 4;
  if (c < 1 || c > 4) c = 4;
  return {static_cast<WireError>(c), std::move(text)};
}

}  // namespace pairsource
