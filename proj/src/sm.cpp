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

#include "pairsource/sm.hpp"

namespace pairsource {

SMTransform sm_transform(const Point& point, const mpz_class& c, const CurveParams& fp_curve,
                         Rng& rng) {
  if (!fp_curve.is_prime_field() || !fp_curve.subgroup_order)
    throw Error("sm_transform needs prime-field params with a subgroup order");
  const mpz_class& r = *fp_curve.subgroup_order;
  if (c < 0 || c >= r) throw std::invalid_argument("scalar out of [0, r)");

  SMSecret s;
  s.p = fp_curve.modulus;
  s.q = rand_prime(static_cast<unsigned>(s.p.bit_length()), rng);
  s.n = Modulus::composite(s.p.value() * s.q.value());
  const mpz_class& n = s.n.value();
  mpz_class one = 1;
  s.r1 = rng.range(one, n);
  s.r2 = rng.range(one, n);
  s.r3 = rng.range(one, n);
  s.r4 = rng.range(one, n);
  s.r5 = rng.range(one, n);
  s.r6 = rng.range(one, n);
  s.t1 = s.r1;
  s.t2 = s.r2;
  s.original_point = point;
  s.scalar = c;
  s.fp_curve = fp_curve;

  const mpz_class& p = s.p.value();
  RingElement a_blind(fp_curve.a.residue() + s.r3 * p, s.n);
  RingElement b_blind(fp_curve.b.residue() + s.r4 * p, s.n);
  Point p_blind = Point::infinity();
  if (!point.is_infinity()) {
    RingElement xb(point.x().residue() + s.r1 * p, s.n);
    RingElement yb(point.y().residue() + s.r2 * p, s.n);
    p_blind = Point(std::move(xb), std::move(yb));
  }
  mpz_class c1 = c + s.r5 * r;
  mpz_class c2 = s.t1 * c + s.t2 + s.r6 * r;

  SMTransform out;
  out.u1 = SMQueryU1{s.n, a_blind, b_blind, p_blind, std::move(c1), s.r1, s.r2};
  out.u2 = SMQueryU2{s.n, a_blind, b_blind, p_blind, std::move(c2)};
  out.secret = std::move(s);
  return out;
}

SMResponseU1 sm_server_u1(const SMQueryU1& q) {
  CurveParams zn = CurveParams::ring(q.a, q.b, q.n);
  Point q1 = scalar_multi(q.p_blinded, q.c1, zn);
  Point q3 = point_add(scalar_multi(q1, q.r1, zn), scalar_multi(q.p_blinded, q.r2, zn), zn);
  return SMResponseU1{std::move(q1), std::move(q3)};
}

SMResponseU2 sm_server_u2(const SMQueryU2& q) {
  CurveParams zn = CurveParams::ring(q.a, q.b, q.n);
  return SMResponseU2{scalar_multi(q.p_blinded, q.c2, zn)};
}

bool sm_verify(const SMResponseU1& r1, const SMResponseU2& r2, const SMSecret& secret) {
  Point q3 = reduce_point(r1.q3, secret.p);
  Point q2 = reduce_point(r2.q2, secret.p);
  if (!(q3 == q2)) return false;
  // Hardening beyond the cross-check: the recovered point must lie on the
  // public curve, which closes responses that tamper with Q1 alone.
  Point q1 = reduce_point(r1.q1, secret.p);
  return is_on_curve(q1, secret.fp_curve);
}

Point sm_recover(const SMResponseU1& r1, const SMResponseU2& r2, const SMSecret& secret) {
  if (!sm_verify(r1, r2, secret)) throw VerificationFailed(ProtocolStage::scalar_mult);
  return reduce_point(r1.q1, secret.p);
}

}  // namespace pairsource
