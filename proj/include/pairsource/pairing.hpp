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

#include <string>

#include "pairsource/curve.hpp"

namespace pairsource {

/// Supersingular curve y^2 = x^3 + x over F_p with p = 3 (mod 4), embedding
/// degree 2. The order-r subgroup (r | p+1, r prime) pairs into the order-r
/// subgroup of F_{p^2}^* via the Tate pairing with a distortion map.
struct PairingParams {
  std::string name;
  CurveParams curve;    // a = 1, b = 0, with subgroup order, cofactor, generator
  mpz_class r;          // prime subgroup order
  mpz_class final_exp;  // (p^2 - 1) / r

  const Modulus& field() const { return curve.modulus; }
  const Point& generator() const { return *curve.generator; }

  /// Checks every structural invariant; throws Error on violation.
  void validate() const;
};

/// Point over F_{p^2}, the image arena of the distortion map.
class Fp2Point {
 public:
  Fp2Point() = default;  // identity
  Fp2Point(Fp2Element x, Fp2Element y) : inf_(false), x_(std::move(x)), y_(std::move(y)) {}
  static Fp2Point infinity() { return Fp2Point(); }
  bool is_infinity() const { return inf_; }
  const Fp2Element& x() const { return x_; }
  const Fp2Element& y() const { return y_; }

 private:
  bool inf_ = true;
  Fp2Element x_, y_;
};

/// (x, y) -> (-x, i*y): carries E(F_p) onto an independent copy inside
/// E(F_{p^2}) so the pairing of a point with its own subgroup is
/// non-degenerate.
Fp2Point distortion(const Point& p);

/// Miller accumulation of line evaluations l/v over the bits of r.
/// Throws ZeroEvaluation if a line vanishes at Q (impossible for valid
/// prime-order inputs; reachable only with garbage).
Fp2Element miller_loop(const Point& p, const Fp2Point& q, const PairingParams& pp);

/// Element of the order-r subgroup of F_{p^2}^* (canonical after final
/// exponentiation).
class GtElement {
 public:
  GtElement() = default;
  explicit GtElement(Fp2Element v) : v_(std::move(v)) {}
  static GtElement one(const Modulus& p) { return GtElement(Fp2Element::one(p)); }
  const Fp2Element& value() const { return v_; }
  bool is_one() const { return v_.is_one(); }
  bool operator==(const GtElement& o) const { return v_ == o.v_; }

 private:
  Fp2Element v_;
};

GtElement gt_mul(const GtElement& a, const GtElement& b);
GtElement gt_pow(const GtElement& a, const mpz_class& e);

/// Reduced Tate pairing e(A, B) = miller(A, distortion(B))^((p^2-1)/r).
/// Returns 1 when either input is the identity.
GtElement tate_pairing(const Point& a, const Point& b, const PairingParams& pp);

/// Deterministic parameter search: r = random r_bits prime, then p = k*r - 1
/// over even k until p is a p_bits prime with p = 3 (mod 4). Throws
/// ParamSearchExhausted once max_candidate_tests primality candidates fail.
PairingParams generate_pairing_params(unsigned p_bits, unsigned r_bits, std::uint64_t seed,
                                      const std::string& name = "",
                                      int max_candidate_tests = 500000);

}  // namespace pairsource
