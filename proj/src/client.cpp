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

#include "pairsource/client.hpp"

#include <chrono>

namespace pairsource {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Times a region and attributes its operation counts to an accumulator.
class ClientRegion {
 public:
  ClientRegion(double* time_acc, OpCounts* ops_acc)
      : time_acc_(time_acc), ops_acc_(ops_acc), start_(Clock::now()), ops_start_(snapshot_ops()) {}
  ~ClientRegion() {
    if (time_acc_) *time_acc_ += ms_since(start_);
    if (ops_acc_) *ops_acc_ += snapshot_ops() - ops_start_;
  }

 private:
  double* time_acc_;
  OpCounts* ops_acc_;
  Clock::time_point start_;
  OpCounts ops_start_;
};

}  // namespace

OutsourcingClient::OutsourcingClient(PairingParams params, Transport& u1, Transport& u2,
                                     std::uint64_t seed, unsigned check_exponent_bits)
    : params_(std::move(params)), u1_(&u1), u2_(&u2), rng_(seed), m_(check_exponent_bits) {}

WireMessage OutsourcingClient::exchange(Transport& t, const WireMessage& request) {
  WireMessage reply = t.roundtrip(request);
  if (reply.kind == MsgKind::error) {
    auto [code, text] = decode_error(reply);
    if (code == WireError::computation_failed) throw ComputationFailed(text);
    throw TransportError("server error: " + text);
  }
  return reply;
}

Point OutsourcingClient::delegate_scalar_mult(const Point& point, const mpz_class& c,
                                              SmRunStats* stats) {
  SmRunStats local;
  SmRunStats& st = stats ? *stats : local;
  // Degenerate multiples are answered locally: 0*P and c*O are the identity
  // with nothing to hide, and a blinded chain cannot land on a point
  // congruent to the identity without a non-invertible step.
  if (point.is_infinity() || c == 0) {
    ++st.attempts;
    return Point::infinity();
  }
  for (int attempt = 0; attempt < kMaxSmAttempts; ++attempt) {
    ++st.attempts;
    std::uint64_t tag1, tag2;
    SMTransform tf;
    {
      ClientRegion region(&st.transform_ms, &st.client_ops);
      tf = sm_transform(point, c, params_.curve, rng_);
      tag1 = rng_.u64();
      tag2 = rng_.u64();
    }
    WireMessage reply1, reply2;
    try {
      reply1 = exchange(*u1_, encode_sm_q1(tag1, tf.u1));
      reply2 = exchange(*u2_, encode_sm_q2(tag2, tf.u2));
    } catch (const ComputationFailed&) {
      continue;  // fresh blinding, fresh session modulus
    }

    bool ok = false;
    SMResponseU1 r1;
    SMResponseU2 r2;
    {
      ClientRegion region(&st.verify_ms, &st.client_ops);
      if (reply1.tag != tag1 || reply2.tag != tag2) throw VerificationFailed(ProtocolStage::scalar_mult);
      try {
        auto pts1 = decode_sm_resp(reply1);
        auto pts2 = decode_sm_resp(reply2);
        if (pts1.size() == 2 && pts2.size() == 1) {
          auto bind = [&](const RawPoint& raw) {
            if (raw.infinity) return Point::infinity();
            return Point(RingElement(raw.x, tf.secret.n), RingElement(raw.y, tf.secret.n));
          };
          r1 = SMResponseU1{bind(pts1[0]), bind(pts1[1])};
          r2 = SMResponseU2{bind(pts2[0])};
          ok = sm_verify(r1, r2, tf.secret);
        }
      } catch (const MalformedMessage&) {
        ok = false;
      }
    }
    if (!ok) throw VerificationFailed(ProtocolStage::scalar_mult);
    {
      ClientRegion region(&st.recover_ms, &st.client_ops);
      Point out = sm_recover(r1, r2, tf.secret);
      return out;
    }
  }
  throw ComputationFailed("delegated scalar multiplication kept failing; giving up");
}

GtElement OutsourcingClient::delegate_pairing(const Point& a, const Point& b,
                                              BpsmRunStats* stats) {
  BpsmRunStats local;
  BpsmRunStats& st = stats ? *stats : local;

  BPSMSecret secret;
  {
    ClientRegion region(&st.transform_ms, &st.client_ops);
    OpCounts before = snapshot_ops();
    secret = gen_coeffs(params_.r, m_, rng_);
    st.transform_ops += snapshot_ops() - before;
  }

  // The six delegated scalar multiplications (their own client work is
  // accounted inside the sub-protocol stats and folded into client_ops).
  BpsmInputs inputs;
  {
    auto sm_start = Clock::now();
    OpCounts sm_before = snapshot_ops();
    auto run = [&](const Point& p, const mpz_class& scalar) {
      SmRunStats sm_stats;
      Point out = delegate_scalar_mult(p, scalar, &sm_stats);
      st.client_ops += sm_stats.client_ops;
      st.sm_attempts += sm_stats.attempts;
      return out;
    };
    inputs.a1A = run(a, secret.a1);
    inputs.b1A = run(a, secret.b1);
    inputs.a2B = run(b, secret.a2);
    inputs.b2B = run(b, secret.b2);
    mpz_class x_r = secret.x % params_.r;
    inputs.xb1A = run(inputs.b1A, x_r);
    inputs.xa2B = run(inputs.a2B, x_r);
    st.sm_total_ms += ms_since(sm_start);
    st.sm_total_ops += snapshot_ops() - sm_before;
  }

  BpsmQueryPlan plan;
  {
    ClientRegion region(&st.transform_ms, &st.client_ops);
    OpCounts before = snapshot_ops();
    plan = bpsm_assemble(inputs, secret, rng_);
    st.transform_ops += snapshot_ops() - before;
  }

  GtElement h1, h2, l1, l2;
  {
    auto pair_start = Clock::now();
    OpCounts pair_before = snapshot_ops();
    auto ask = [&](Transport& t, const PairQuery& q, PairRole role) {
      WireMessage reply = exchange(t, encode_pair_q(q.tag, to_raw(q.left), to_raw(q.right)));
      if (reply.tag != q.tag) throw VerificationFailed(ProtocolStage::pairing);
      GtElement value;
      try {
        auto [c0, c1] = decode_pair_resp(reply);
        const Modulus& p = params_.field();
        value = GtElement(Fp2Element(RingElement(c0, p), RingElement(c1, p)));
      } catch (const MalformedMessage&) {
        throw VerificationFailed(ProtocolStage::pairing);
      }
      switch (role) {
        case PairRole::h1: h1 = value; break;
        case PairRole::l1: l1 = value; break;
        case PairRole::h2: h2 = value; break;
        case PairRole::l2: l2 = value; break;
      }
    };
    ask(*u1_, plan.u1[0], plan.u1_roles[0]);
    ask(*u1_, plan.u1[1], plan.u1_roles[1]);
    ask(*u2_, plan.u2[0], plan.u2_roles[0]);
    ask(*u2_, plan.u2[1], plan.u2_roles[1]);
    st.pair_queries_ms += ms_since(pair_start);
    st.pair_queries_ops += snapshot_ops() - pair_before;
  }

  BpsmCheck check;
  {
    ClientRegion region(&st.verify_ms, &st.client_ops);
    OpCounts before = snapshot_ops();
    check = bpsm_verify(h1, h2, l1, l2, secret.x);
    OpCounts delta = snapshot_ops() - before;
    st.check_ops += delta;
    st.verify_ops += delta;
  }
  if (!check.ok) throw VerificationFailed(ProtocolStage::pairing);
  {
    ClientRegion region(&st.recover_ms, &st.client_ops);
    OpCounts before = snapshot_ops();
    GtElement out = bpsm_recover(check);
    OpCounts delta = snapshot_ops() - before;
    st.check_ops += delta;
    st.recover_ops += delta;
    return out;
  }
}

}  // namespace pairsource
