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

#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "pairsource/bpsm.hpp"

using namespace pairsource;
using pairsource::testing::HonestPair;
using pairsource::testing::toy32;

TEST_CASE("coefficient generation satisfies the splitting identity") {
  const mpz_class& r = toy32().r;
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    BPSMSecret s = gen_coeffs(r, 64, rng);
    CHECK((s.a1 * s.a2 + s.b1 * s.b2) % r == 1);
    CHECK(s.b2 != 0);
    CHECK(s.x >= 2);
    CHECK(mpz_sizeinbase(s.x.get_mpz_t(), 2) <= 64);
  }
}

TEST_CASE("degenerate coefficient draws are rejected") {
  const mpz_class& r = toy32().r;
  CHECK_FALSE(complete_coefficients(1, 1, 123, r).has_value());
  auto b2 = complete_coefficients(2, 3, 5, r);
  REQUIRE(b2.has_value());
  CHECK((mpz_class(6) + mpz_class(5) * *b2) % r == 1);
}

TEST_CASE("coefficient distribution is coarsely uniform") {
  const mpz_class& r = toy32().r;
  Rng rng(42);
  int buckets[8] = {0};
  const int samples = 1000;
  for (int t = 0; t < samples; ++t) {
    BPSMSecret s = gen_coeffs(r, 64, rng);
    mpz_class idx = (s.a1 - 1) * 8 / (r - 1);
    ++buckets[std::min(7ul, idx.get_ui())];
  }
  double chi2 = 0;
  const double expect = samples / 8.0;
  for (int b : buckets) chi2 += (b - expect) * (b - expect) / expect;
  CHECK(chi2 < 18.475);  // df = 7, alpha = 0.01
}

TEST_CASE("prepare: blinded products and exponent bookkeeping") {
  const PairingParams& pp = toy32();
  Rng rng(43);
  Point A = testing::random_subgroup_point(pp, rng);
  Point B = testing::random_subgroup_point(pp, rng);
  BPSMSecret s = gen_coeffs(pp.r, 16, rng);

  int sm_calls = 0;
  SmRunner direct = [&](const Point& p, const mpz_class& c) {
    ++sm_calls;
    return scalar_multi(p, c, pp.curve);
  };
  BpsmQueryPlan plan = bpsm_prepare(A, B, s, direct, pp.r, rng);
  CHECK(sm_calls == 6);

  auto find_role = [&](PairRole role) -> const PairQuery& {
    for (int i = 0; i < 2; ++i) {
      if (plan.u1_roles[i] == role) return plan.u1[i];
      if (plan.u2_roles[i] == role) return plan.u2[i];
    }
    FAIL("role not found");
    return plan.u1[0];
  };
  const PairQuery& h1 = find_role(PairRole::h1);
  CHECK(h1.left == scalar_multi(A, s.a1, pp.curve));
  CHECK(h1.right == scalar_multi(B, s.a2, pp.curve));

  // e(x*b1*A, b2*B) = e(A,B)^(x*b1*b2)
  const PairQuery& l1 = find_role(PairRole::l1);
  GtElement base = tate_pairing(A, B, pp);
  GtElement lhs = tate_pairing(l1.left, l1.right, pp);
  CHECK(lhs == gt_pow(base, s.x * s.b1 * s.b2 % pp.r));
  const PairQuery& l2 = find_role(PairRole::l2);
  CHECK(tate_pairing(l2.left, l2.right, pp) == gt_pow(base, s.x * s.a1 * s.a2 % pp.r));

  // distinct tags on all four queries
  std::set<std::uint64_t> tags{plan.u1[0].tag, plan.u1[1].tag, plan.u2[0].tag, plan.u2[1].tag};
  CHECK(tags.size() == 4);
}

TEST_CASE("both submission orders occur") {
  const PairingParams& pp = toy32();
  Rng rng(44);
  Point A = testing::random_subgroup_point(pp, rng);
  Point B = testing::random_subgroup_point(pp, rng);
  SmRunner direct = [&](const Point& p, const mpz_class& c) {
    return scalar_multi(p, c, pp.curve);
  };
  int u1_swaps = 0, u2_swaps = 0;
  for (int t = 0; t < 100; ++t) {
    BPSMSecret s = gen_coeffs(pp.r, 16, rng);
    bpsm_prepare(A, B, s, direct, pp.r, rng);
    u1_swaps += s.u1_swapped;
    u2_swaps += s.u2_swapped;
  }
  CHECK(u1_swaps > 0);
  CHECK(u1_swaps < 100);
  CHECK(u2_swaps > 0);
  CHECK(u2_swaps < 100);
}

TEST_CASE("honest pairing server") {
  const PairingParams& pp = toy32();
  Rng rng(45);
  Point A = testing::random_subgroup_point(pp, rng);
  Point B = testing::random_subgroup_point(pp, rng);
  BPSMSecret s = gen_coeffs(pp.r, 64, rng);

  PairQuery q{scalar_multi(A, s.a1, pp.curve), scalar_multi(B, s.a2, pp.curve), 7171};
  PairResponse resp = bpsm_server_pair(q, pp);
  CHECK(resp.tag == q.tag);
  CHECK(resp.value == gt_pow(tate_pairing(A, B, pp), s.a1 * s.a2 % pp.r));

  PairQuery degenerate{Point::infinity(), B, 1};
  CHECK(bpsm_server_pair(degenerate, pp).value.is_one());
}

TEST_CASE("verification equation") {
  const PairingParams& pp = toy32();
  const Modulus& p = pp.field();
  Rng rng(46);
  Point A = testing::random_subgroup_point(pp, rng);
  Point B = testing::random_subgroup_point(pp, rng);
  BPSMSecret s = gen_coeffs(pp.r, 64, rng);
  GtElement e = tate_pairing(A, B, pp);
  GtElement h1 = gt_pow(e, s.a1 * s.a2 % pp.r);
  GtElement h2 = gt_pow(e, s.b1 * s.b2 % pp.r);
  GtElement l1 = gt_pow(e, s.x * s.b1 * s.b2 % pp.r);
  GtElement l2 = gt_pow(e, s.x * s.a1 * s.a2 % pp.r);

  SUBCASE("honest transcript verifies and recovers e(A,B)") {
    BpsmCheck chk = bpsm_verify(h1, h2, l1, l2, s.x);
    CHECK(chk.ok);
    CHECK(bpsm_recover(chk) == e);
  }
  SUBCASE("scaled responses fail unless compensated") {
    GtElement unit = gt_pow(e, 12345 % pp.r);
    BpsmCheck chk = bpsm_verify(gt_mul(h1, unit), h2, l1, l2, s.x);
    CHECK_FALSE(chk.ok);
    CHECK_THROWS_AS(bpsm_recover(chk), VerificationFailed);
    // compensating both sides with the x-th power slips through the check
    // but corrupts the recovered value: exactly the guess-x event
    BpsmCheck slipped =
        bpsm_verify(gt_mul(h1, unit), h2, gt_mul(l1, gt_pow(unit, s.x)), l2, s.x);
    CHECK(slipped.ok);
    CHECK_FALSE(bpsm_recover(slipped) == e);
  }
  SUBCASE("random tamper trials never accept") {
    int accepts = 0;
    for (int t = 0; t < 1000; ++t) {
      GtElement bad(Fp2Element(RingElement(rng.below(p.value()), p),
                               RingElement(rng.below(p.value()), p)));
      if (bpsm_verify(bad, h2, l1, l2, s.x).ok) ++accepts;
      if (bpsm_verify(h1, h2, bad, l2, s.x).ok) ++accepts;
    }
    CHECK(accepts == 0);
  }
  SUBCASE("all-identity transcript is degenerate but consistent") {
    GtElement one = GtElement::one(p);
    BpsmCheck chk = bpsm_verify(one, one, one, one, s.x);
    CHECK(chk.ok);
    CHECK(bpsm_recover(chk).is_one());
  }
}

TEST_CASE("end-to-end delegation equals the local pairing") {
  const PairingParams& pp = toy32();
  HonestPair servers(pp);
  OutsourcingClient client(pp, *servers.u1, *servers.u2, 4242);
  Rng rng(47);
  for (int t = 0; t < 20; ++t) {
    Point A = testing::random_subgroup_point(pp, rng);
    Point B = testing::random_subgroup_point(pp, rng);
    CHECK(client.delegate_pairing(A, B) == tate_pairing(A, B, pp));
  }
  // exponent identity: a1*a2 + b1*b2 = 1 makes H1*H2 the pairing itself
  Point A = testing::random_subgroup_point(pp, rng);
  Point B = testing::random_subgroup_point(pp, rng);
  BPSMSecret s = gen_coeffs(pp.r, 64, rng);
  GtElement e = tate_pairing(A, B, pp);
  GtElement h1 = gt_pow(e, s.a1 * s.a2 % pp.r);
  GtElement h2 = gt_pow(e, s.b1 * s.b2 % pp.r);
  CHECK(gt_mul(h1, h2) == e);
}

TEST_CASE("identity inputs recover the identity") {
  const PairingParams& pp = toy32();
  HonestPair servers(pp);
  OutsourcingClient client(pp, *servers.u1, *servers.u2, 555);
  Rng rng(48);
  Point B = testing::random_subgroup_point(pp, rng);
  CHECK(client.delegate_pairing(Point::infinity(), B).is_one());
  CHECK(client.delegate_pairing(B, Point::infinity()).is_one());
}

TEST_CASE("client workload: one exponentiation, two multiplications, no group ops") {
  const PairingParams& pp = toy32();
  HonestPair servers(pp);
  OutsourcingClient client(pp, *servers.u1, *servers.u2, 808);
  Rng rng(49);
  for (int t = 0; t < 10; ++t) {
    Point A = testing::random_subgroup_point(pp, rng);
    Point B = testing::random_subgroup_point(pp, rng);
    BpsmRunStats stats;
    client.delegate_pairing(A, B, &stats);
    CHECK(stats.check_ops.gt_exp == 1);
    CHECK(stats.check_ops.gt_mul == 2);
    CHECK(stats.client_ops.pairing == 0);
    CHECK(stats.client_ops.scalar_mul == 0);
    CHECK(stats.client_ops.point_add == 0);
    CHECK(stats.client_ops.point_double == 0);
  }
}

TEST_CASE("client construction performs no work (no precomputation)") {
  const PairingParams& pp = toy32();
  HonestPair servers(pp);
  OpCounts before = snapshot_ops();
  OutsourcingClient client(pp, *servers.u1, *servers.u2, 909);
  OpCounts delta = snapshot_ops() - before;
  CHECK(delta == OpCounts{});
  // cold session is immediately usable
  Rng rng(50);
  Point A = testing::random_subgroup_point(pp, rng);
  Point B = testing::random_subgroup_point(pp, rng);
  CHECK(client.delegate_pairing(A, B) == tate_pairing(A, B, pp));
}

TEST_CASE("transport failure surfaces without a partial result") {
  const PairingParams& pp = toy32();
  HonestPair servers(pp);

  struct Dropping : Transport {
    Transport& inner;
    int after;
    int count = 0;
    Dropping(Transport& t, int n) : inner(t), after(n) {}
    WireMessage roundtrip(const WireMessage& m) override {
      if (++count > after) throw TransportError("connection dropped");
      return inner.roundtrip(m);
    }
  };

  Rng rng(51);
  Point A = testing::random_subgroup_point(pp, rng);
  Point B = testing::random_subgroup_point(pp, rng);
  for (int fail_at : {0, 3, 7}) {
    Dropping flaky(*servers.u1, fail_at);
    OutsourcingClient client(pp, flaky, *servers.u2, 616);
    CHECK_THROWS_AS(client.delegate_pairing(A, B), TransportError);
  }
}

TEST_CASE("a failed sub-protocol computation is retried with fresh blinding") {
  const PairingParams& pp = toy32();
  HonestPair servers(pp);

  // refuses the first scalar-mult query, then delegates honestly
  struct FlakyOnce : Transport {
    Transport& inner;
    bool failed = false;
    mpz_class first_n = 0, second_n = 0;
    explicit FlakyOnce(Transport& t) : inner(t) {}
    WireMessage roundtrip(const WireMessage& m) override {
      if (m.kind == MsgKind::sm_q1) {
        SMQueryU1 q = decode_sm_q1(m);
        if (!failed) {
          failed = true;
          first_n = q.n.value();
          return encode_error(m.tag, WireError::computation_failed, "induced failure");
        }
        if (second_n == 0) second_n = q.n.value();
      }
      return inner.roundtrip(m);
    }
  };

  Rng rng(52);
  Point P = testing::random_subgroup_point(pp, rng);
  mpz_class c = rng.below(pp.r);
  FlakyOnce flaky(*servers.u1);
  OutsourcingClient client(pp, flaky, *servers.u2, 717);
  SmRunStats stats;
  Point out = client.delegate_scalar_mult(P, c, &stats);
  CHECK(out == scalar_multi(P, c, pp.curve));
  CHECK(stats.attempts == 2);
  CHECK(flaky.first_n != flaky.second_n);  // fresh session modulus on retry
}
