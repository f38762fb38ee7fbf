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

#include "pairsource/curve.hpp"

namespace pairsource {

/// Two-server delegated scalar multiplication.
///
/// The client blinds the point, the curve coefficients and the scalar, ships
/// the blinded problem to two non-colluding servers (at most one malicious),
/// cross-checks their answers modulo p, and recovers c*P by coordinate
/// reduction, without performing a single point operation itself.
///
/// Blinding layout, with fresh prime q and N = p*q per session and masks
/// r1..r6 uniform in [1, N):
///   x' = (x + r1*p) mod N        a' = (a + r3*p) mod N
///   y' = (y + r2*p) mod N        b' = (b + r4*p) mod N
///   c1 = c + r5*r                c2 = t1*c + t2 + r6*r    (t1 = r1, t2 = r2)
/// Coordinates are masked by multiples of the field prime (the group-law
/// formulas reduce mod p), scalars by multiples of the subgroup order r (the
/// only masks that vanish on an order-r point); the scalars are carried as
/// plain integers, never folded mod N.

struct SMSecret {
  Modulus p;  // field prime
  Modulus q;  // fresh session prime, same bit length as p
  Modulus n;  // N = p*q
  mpz_class r1, r2, r3, r4, r5, r6;
  mpz_class t1, t2;  // verification coefficients; t1 = r1, t2 = r2 as integers
  Point original_point;
  mpz_class scalar;      // c in [0, r)
  CurveParams fp_curve;  // public curve
};

struct SMQueryU1 {
  Modulus n;
  RingElement a, b;  // blinded coefficients a', b' (b' is carried but unused
                     // by the group law, which only needs a in the tangent slope)
  Point p_blinded;
  mpz_class c1, r1, r2;
};

struct SMQueryU2 {
  Modulus n;
  RingElement a, b;
  Point p_blinded;
  mpz_class c2;
};

struct SMResponseU1 {
  Point q1, q3;
};
struct SMResponseU2 {
  Point q2;
};

struct SMTransform {
  SMQueryU1 u1;
  SMQueryU2 u2;
  SMSecret secret;
};

/// Client: blind (P, c) into two queries plus the secret needed to verify
/// and recover. P must lie in the order-r subgroup; c in [0, r).
SMTransform sm_transform(const Point& point, const mpz_class& c, const CurveParams& fp_curve,
                         Rng& rng);

/// Server U1: Q1 = c1*P', Q3 = r1*Q1 + r2*P' over Z_N, blindly.
/// NotInvertible propagates; the caller reports ComputationFailed.
SMResponseU1 sm_server_u1(const SMQueryU1& q);

/// Server U2: Q2 = c2*P' over Z_N.
SMResponseU2 sm_server_u2(const SMQueryU2& q);

/// True iff Q3 = Q2 (mod p) coordinate-wise (identity distinct) and
/// Q1 mod p lies on the public curve. False on any malformed response.
bool sm_verify(const SMResponseU1& r1, const SMResponseU2& r2, const SMSecret& secret);

/// R = Q1 mod p. Runs sm_verify first and throws
/// VerificationFailed{scalar_mult} unless it passes.
Point sm_recover(const SMResponseU1& r1, const SMResponseU2& r2, const SMSecret& secret);

}  // namespace pairsource
