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

#include "pairsource/bpsm.hpp"

namespace pairsource {

std::optional<mpz_class> complete_coefficients(const mpz_class& a1, const mpz_class& a2,
                                               const mpz_class& b1, const mpz_class& r) {
  Modulus rm = Modulus::prime_unchecked(r);
  RingElement prod = RingElement(a1, rm) * RingElement(a2, rm);
  RingElement rest = RingElement::one(rm) - prod;
  if (rest.is_zero()) return std::nullopt;
  RingElement b2 = rest * RingElement(b1, rm).inverse();
  return b2.residue();
}

BPSMSecret gen_coeffs(const mpz_class& r, unsigned m, Rng& rng) {
  if (m < 2) throw std::invalid_argument("gen_coeffs: m too small");
  BPSMSecret s;
  s.m = m;
  mpz_class one = 1;
  for (;;) {
    s.a1 = rng.range(one, r);
    s.a2 = rng.range(one, r);
    s.b1 = rng.range(one, r);
    auto b2 = complete_coefficients(s.a1, s.a2, s.b1, r);
    if (!b2) continue;
    s.b2 = std::move(*b2);
    break;
  }
  s.x = rng.range(mpz_class(2), mpz_class(1) << m);
  return s;
}

BpsmQueryPlan bpsm_assemble(const BpsmInputs& in, BPSMSecret& secret, Rng& rng) {
  BpsmQueryPlan plan;
  plan.u1 = {PairQuery{in.a1A, in.a2B, rng.u64()}, PairQuery{in.xb1A, in.b2B, rng.u64()}};
  plan.u1_roles = {PairRole::h1, PairRole::l1};
  plan.u2 = {PairQuery{in.b1A, in.b2B, rng.u64()}, PairQuery{in.a1A, in.xa2B, rng.u64()}};
  plan.u2_roles = {PairRole::h2, PairRole::l2};
  secret.u1_swapped = rng.coin();
  secret.u2_swapped = rng.coin();
  if (secret.u1_swapped) {
    std::swap(plan.u1[0], plan.u1[1]);
    std::swap(plan.u1_roles[0], plan.u1_roles[1]);
  }
  if (secret.u2_swapped) {
    std::swap(plan.u2[0], plan.u2[1]);
    std::swap(plan.u2_roles[0], plan.u2_roles[1]);
  }
  return plan;
}

BpsmQueryPlan bpsm_prepare(const Point& a, const Point& b, BPSMSecret& secret,
                           const SmRunner& run_sm, const mpz_class& r, Rng& rng) {
  BpsmInputs in;
  in.a1A = run_sm(a, secret.a1);
  in.b1A = run_sm(a, secret.b1);
  in.a2B = run_sm(b, secret.a2);
  in.b2B = run_sm(b, secret.b2);
  mpz_class x_r = secret.x % r;
  in.xb1A = run_sm(in.b1A, x_r);
  in.xa2B = run_sm(in.a2B, x_r);
  return bpsm_assemble(in, secret, rng);
}

PairResponse bpsm_server_pair(const PairQuery& q, const PairingParams& pp) {
  return PairResponse{q.tag, tate_pairing(q.left, q.right, pp)};
}

BpsmCheck bpsm_verify(const GtElement& h1, const GtElement& h2, const GtElement& l1,
                      const GtElement& l2, const mpz_class& x) {
  GtElement lhs = gt_mul(l1, l2);
  GtElement product = gt_mul(h1, h2);
  GtElement rhs = gt_pow(product, x);
  return BpsmCheck{std::move(product), lhs == rhs};
}

GtElement bpsm_recover(const BpsmCheck& check) {
  if (!check.ok) throw VerificationFailed(ProtocolStage::pairing);
  return check.recovered;
}

}  // namespace pairsource
