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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>

#include "pairsource/pairing.hpp"

namespace pairsource {

/// Two-server delegated pairing.
///
/// The client splits e(A, B) across four blinded pairing queries
///   U1: (a1*A, a2*B) -> H1 = e^(a1*a2)     (x*b1*A, b2*B) -> L1 = e^(x*b1*b2)
///   U2: (b1*A, b2*B) -> H2 = e^(b1*b2)     (a1*A, x*a2*B) -> L2 = e^(x*a1*a2)
/// with a1*a2 + b1*b2 = 1 (mod r), checks L1*L2 = (H1*H2)^x, and recovers
/// e(A, B) = H1*H2. The six input products come from the delegated
/// scalar-mult sub-protocol, so the client never multiplies a point itself.

struct BPSMSecret {
  mpz_class a1, a2, b1, b2;  // a1*a2 + b1*b2 = 1 (mod r)
  mpz_class x;               // check exponent in [2, 2^m)
  unsigned m = 64;
  bool u1_swapped = false;  // submission order of each server's two queries
  bool u2_swapped = false;
};

/// b2 completing a1*a2 + b1*b2 = 1 (mod r), or nullopt when the completion
/// is zero (a1*a2 = 1) and the draw must be rejected.
std::optional<mpz_class> complete_coefficients(const mpz_class& a1, const mpz_class& a2,
                                               const mpz_class& b1, const mpz_class& r);

/// a1, a2, b1 uniform in [1, r); b2 by completion, resampled while zero;
/// x uniform in [2, 2^m).
BPSMSecret gen_coeffs(const mpz_class& r, unsigned m, Rng& rng);

struct PairQuery {
  Point left, right;
  std::uint64_t tag = 0;
};

struct PairResponse {
  std::uint64_t tag = 0;
  GtElement value;
};

enum class PairRole { h1, l1, h2, l2 };

/// The four queries in per-server submission order, with the role carried by
/// each slot so responses can be matched through their tags.
struct BpsmQueryPlan {
  std::array<PairQuery, 2> u1, u2;
  std::array<PairRole, 2> u1_roles, u2_roles;
};

/// Runs one delegated scalar multiplication: (point, scalar in [0, r)) -> product.
using SmRunner = std::function<Point(const Point&, const mpz_class&)>;

/// The six blinded products feeding the four pairing queries.
struct BpsmInputs {
  Point a1A, b1A, a2B, b2B, xb1A, xa2B;
};

/// Tags the four queries and shuffles each server's pair into a uniformly
/// random submission order (recorded in the secret).
BpsmQueryPlan bpsm_assemble(const BpsmInputs& in, BPSMSecret& secret, Rng& rng);

/// Client: six delegated scalar multiplications (a1*A, b1*A, a2*B, b2*B, then
/// x*(b1*A) and x*(a2*B)), then the four pairing queries assembled with each
/// server's pair submitted in a uniformly random order. Tags come from rng.
BpsmQueryPlan bpsm_prepare(const Point& a, const Point& b, BPSMSecret& secret,
                           const SmRunner& run_sm, const mpz_class& r, Rng& rng);

/// Honest server: evaluate the pairing on a query, echoing its tag.
PairResponse bpsm_server_pair(const PairQuery& q, const PairingParams& pp);

/// Verification outcome; carries the H1*H2 product so recovery reuses it
/// (client total stays at one exponentiation and two multiplications).
struct BpsmCheck {
  GtElement recovered;
  bool ok = false;
};

/// L1*L2 = (H1*H2)^x, exactly 1 G_T exponentiation and 2 multiplications.
BpsmCheck bpsm_verify(const GtElement& h1, const GtElement& h2, const GtElement& l1,
                      const GtElement& l2, const mpz_class& x);

/// H1*H2, gated: throws VerificationFailed{pairing} unless the check passed.
GtElement bpsm_recover(const BpsmCheck& check);

}  // namespace pairsource
