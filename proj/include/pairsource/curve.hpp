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

#include <optional>

#include "pairsource/algebra.hpp"

namespace pairsource {

/// Affine point or the identity. Over F_p, points built via lift() satisfy
/// the curve equation; over Z_N coordinates are blinded and deliberately lie
/// on no fixed curve, so no on-curve invariant is tracked there.
class Point {
 public:
  Point() = default;  // identity
  Point(RingElement x, RingElement y) : inf_(false), x_(std::move(x)), y_(std::move(y)) {
    if (!(x_.modulus() == y_.modulus())) throw ModulusMismatch("point coordinates");
  }

  static Point infinity() { return Point(); }

  bool is_infinity() const { return inf_; }
  const RingElement& x() const { return x_; }
  const RingElement& y() const { return y_; }

  bool operator==(const Point& o) const {
    if (inf_ || o.inf_) return inf_ == o.inf_;
    return x_ == o.x_ && y_ == o.y_;
  }

 private:
  bool inf_ = true;
  RingElement x_, y_;
};

/// Short Weierstrass curve y^2 = x^3 + a x + b over a coefficient ring.
/// Prime-field instances carry the subgroup order r, the cofactor h and a
/// generator of the order-r subgroup; Z_N instances are bare formula arenas.
struct CurveParams {
  RingElement a;
  RingElement b;
  Modulus modulus;
  std::optional<mpz_class> subgroup_order;  // r, prime
  std::optional<mpz_class> cofactor;        // h, with #E = h * r
  std::optional<Point> generator;

  static CurveParams prime_field(const mpz_class& a, const mpz_class& b, Modulus p,
                                 mpz_class subgroup_order, mpz_class cofactor,
                                 std::optional<Point> generator = std::nullopt);
  static CurveParams ring(RingElement a, RingElement b, Modulus n);

  bool is_prime_field() const { return modulus.valid() && modulus.kind() == Modulus::Kind::prime; }
  const mpz_class& order() const { return *subgroup_order; }
};

Point point_negate(const Point& p);

/// Chord rule. P + infinity = P; P + (-P) = infinity; P + P delegates to
/// point_double. Over Z_N a non-invertible chord denominator throws
/// NotInvertible (session abort).
Point point_add(const Point& p, const Point& q, const CurveParams& params);

/// Tangent rule with slope (3x^2 + a)/(2y); doubling a 2-torsion point
/// (y = 0) yields infinity.
Point point_double(const Point& p, const CurveParams& params);

/// Right-to-left double-and-add. n must be >= 0; callers reduce mod r first
/// when they want a canonical scalar.
Point scalar_multi(const Point& p, const mpz_class& n, const CurveParams& params);

bool is_on_curve(const Point& p, const CurveParams& params);

/// Finds y with y^2 = x^3 + ax + b via y = rhs^((p+1)/4) (valid for
/// p = 3 mod 4), then clears the cofactor so the result lies in the order-r
/// subgroup. Throws NonResidue when no square root exists. Prime-field
/// params with cofactor required.
Point lift(const mpz_class& x, const CurveParams& params);

/// Coordinate-wise reduction of a Z_N point into F_p.
Point reduce_point(const Point& p, const Modulus& prime);

}  // namespace pairsource
