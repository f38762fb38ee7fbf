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

#include "pairsource/server.hpp"

#include <algorithm>

namespace pairsource {

BehaviorKind behavior_from_string(const std::string& s) {
  if (s == "honest") return BehaviorKind::honest;
  if (s == "random") return BehaviorKind::random_output;
  if (s == "bitflip") return BehaviorKind::bit_flip;
  if (s == "identity") return BehaviorKind::identity_output;
  if (s == "scale") return BehaviorKind::scale_output;
  if (s == "lazy") return BehaviorKind::lazy;
  throw Error("unknown behavior: " + s);
}

std::string behavior_to_string(BehaviorKind k) {
  switch (k) {
    case BehaviorKind::honest: return "honest";
    case BehaviorKind::random_output: return "random";
    case BehaviorKind::bit_flip: return "bitflip";
    case BehaviorKind::identity_output: return "identity";
    case BehaviorKind::scale_output: return "scale";
    case BehaviorKind::lazy: return "lazy";
  }
  return "?";
}

ServerCore::ServerCore(PairingParams params, BehaviorConfig behavior)
    : params_(std::move(params)), cfg_(std::move(behavior)), rng_(cfg_.seed) {}

std::vector<std::uint8_t> ServerCore::handle_body(std::span<const std::uint8_t> body) {
  WireMessage reply;
  try {
    WireMessage request = decode_body(body);
    reply = handle(request);
  } catch (const MalformedMessage& e) {
    reply = encode_error(0, WireError::malformed, e.what());
  }
  auto frame = encode_frame(reply);
  return std::vector<std::uint8_t>(frame.begin() + 4, frame.end());
}

WireMessage ServerCore::handle(const WireMessage& request) {
  std::lock_guard<std::mutex> lock(mu_);
  if (request.version != kWireVersion)
    return encode_error(request.tag, WireError::unsupported_version, "unsupported version");
  try {
    return dispatch(request);
  } catch (const MalformedMessage& e) {
    return encode_error(request.tag, WireError::malformed, e.what());
  } catch (const NotInvertible&) {
    return encode_error(request.tag, WireError::computation_failed, "non-invertible denominator");
  } catch (const ZeroEvaluation&) {
    return encode_error(request.tag, WireError::computation_failed, "degenerate line evaluation");
  } catch (const std::exception& e) {
    return encode_error(request.tag, WireError::internal, e.what());
  }
}

WireMessage ServerCore::dispatch(const WireMessage& request) {
  switch (request.kind) {
    case MsgKind::sm_q1: return answer_sm_q1(request);
    case MsgKind::sm_q2: return answer_sm_q2(request);
    case MsgKind::pair_q: return answer_pair_q(request);
    default:
      return encode_error(request.tag, WireError::malformed, "unexpected message kind");
  }
}

namespace {

Point bind(const RawPoint& raw, const Modulus& m) {
  if (raw.infinity) return Point::infinity();
  return Point(RingElement(raw.x, m), RingElement(raw.y, m));
}

}  // namespace

WireMessage ServerCore::answer_sm_q1(const WireMessage& m) {
  bool tampering = cfg_.kind != BehaviorKind::honest && cfg_.applies_to_sm();
  if (tampering && cfg_.kind == BehaviorKind::lazy) {
    auto it = stale_.find(MsgKind::sm_resp);
    if (it != stale_.end()) return WireMessage{kWireVersion, MsgKind::sm_resp, m.tag, it->second};
  }
  SMQueryU1 q = decode_sm_q1(m);
  SMResponseU1 resp = sm_server_u1(q);
  std::vector<RawPoint> pts{to_raw(resp.q1), to_raw(resp.q3)};
  if (tampering) pts = tamper_points(std::move(pts), q.n, q.a);
  WireMessage out = encode_sm_resp(m.tag, pts);
  if (cfg_.kind == BehaviorKind::lazy && cfg_.applies_to_sm()) stale_[MsgKind::sm_resp] = out.payload;
  return out;
}

WireMessage ServerCore::answer_sm_q2(const WireMessage& m) {
  bool tampering = cfg_.kind != BehaviorKind::honest && cfg_.applies_to_sm();
  if (tampering && cfg_.kind == BehaviorKind::lazy) {
    auto it = stale_.find(MsgKind::sm_resp);
    if (it != stale_.end()) return WireMessage{kWireVersion, MsgKind::sm_resp, m.tag, it->second};
  }
  SMQueryU2 q = decode_sm_q2(m);
  SMResponseU2 resp = sm_server_u2(q);
  std::vector<RawPoint> pts{to_raw(resp.q2)};
  if (tampering) pts = tamper_points(std::move(pts), q.n, q.a);
  WireMessage out = encode_sm_resp(m.tag, pts);
  if (cfg_.kind == BehaviorKind::lazy && cfg_.applies_to_sm()) stale_[MsgKind::sm_resp] = out.payload;
  return out;
}

WireMessage ServerCore::answer_pair_q(const WireMessage& m) {
  bool tampering = cfg_.kind != BehaviorKind::honest && cfg_.applies_to_pair();
  if (tampering && cfg_.kind == BehaviorKind::lazy) {
    auto it = stale_.find(MsgKind::pair_resp);
    if (it != stale_.end()) return WireMessage{kWireVersion, MsgKind::pair_resp, m.tag, it->second};
  }
  auto [left_raw, right_raw] = decode_pair_q(m);
  const Modulus& p = params_.field();
  PairQuery q{bind(left_raw, p), bind(right_raw, p), m.tag};
  PairResponse resp = bpsm_server_pair(q, params_);
  GtElement value = resp.value;
  if (tampering) value = tamper_gt(std::move(value));
  WireMessage out = encode_pair_resp(m.tag, value);
  if (cfg_.kind == BehaviorKind::lazy && cfg_.applies_to_pair())
    stale_[MsgKind::pair_resp] = out.payload;
  return out;
}

std::vector<RawPoint> ServerCore::tamper_points(std::vector<RawPoint> pts, const Modulus& n,
                                                const RingElement& a_coeff) {
  switch (cfg_.kind) {
    case BehaviorKind::random_output:
      for (RawPoint& p : pts) {
        p.infinity = false;
        p.x = rng_.below(n.value());
        p.y = rng_.below(n.value());
      }
      return pts;
    case BehaviorKind::bit_flip: {
      std::size_t idx = static_cast<std::size_t>(rng_.u64() % pts.size());
      RawPoint& p = pts[idx];
      if (p.infinity) {
        p.infinity = false;
        p.x = 1;
        p.y = 1;
        return pts;
      }
      mpz_class& coord = rng_.coin() ? p.x : p.y;
      unsigned span = static_cast<unsigned>(n.bit_length());
      unsigned bit = cfg_.bit_position ? *cfg_.bit_position % span
                                       : static_cast<unsigned>(rng_.u64() % span);
      mpz_combit(coord.get_mpz_t(), bit);
      return pts;
    }
    case BehaviorKind::identity_output:
      for (RawPoint& p : pts) p = RawPoint{};
      return pts;
    case BehaviorKind::scale_output: {
      CurveParams zn = CurveParams::ring(a_coeff, RingElement::zero(n), n);
      for (RawPoint& p : pts) p = to_raw(scalar_multi(bind(p, n), cfg_.scale_unit, zn));
      return pts;
    }
    case BehaviorKind::lazy:
    case BehaviorKind::honest:
      return pts;  // lazy misses fall through to the honest answer
  }
  return pts;
}

const GtElement& ServerCore::gt_unit() {
  if (!gt_unit_) {
    GtElement base = tate_pairing(params_.generator(), params_.generator(), params_);
    gt_unit_ = gt_pow(base, cfg_.scale_unit);
  }
  return *gt_unit_;
}

GtElement ServerCore::tamper_gt(GtElement v) {
  const Modulus& p = params_.field();
  switch (cfg_.kind) {
    case BehaviorKind::random_output:
      return GtElement(Fp2Element(RingElement(rng_.below(p.value()), p),
                                  RingElement(rng_.below(p.value()), p)));
    case BehaviorKind::bit_flip: {
      mpz_class c0 = v.value().c0().residue();
      mpz_class c1 = v.value().c1().residue();
      mpz_class& coord = rng_.coin() ? c0 : c1;
      unsigned span = static_cast<unsigned>(p.bit_length());
      unsigned bit = cfg_.bit_position ? *cfg_.bit_position % span
                                       : static_cast<unsigned>(rng_.u64() % span);
      mpz_combit(coord.get_mpz_t(), bit);
      return GtElement(Fp2Element(RingElement(c0, p), RingElement(c1, p)));
    }
    case BehaviorKind::identity_output:
      return GtElement::one(p);
    case BehaviorKind::scale_output:
      return gt_mul(v, gt_unit());
    case BehaviorKind::lazy:
    case BehaviorKind::honest:
      return v;
  }
  return v;
}

}  // namespace pairsource
