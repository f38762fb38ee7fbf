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

#include "fixtures.hpp"
#include "pairsource/pairing.hpp"

using namespace pairsource;
using pairsource::testing::tiny_curve;
using pairsource::testing::toy32;

TEST_CASE("distortion map") {
  const PairingParams& pp = toy32();
  CHECK(distortion(Point::infinity()).is_infinity());

  Rng rng(21);
  Point P = testing::random_subgroup_point(pp, rng);
  Fp2Point D = distortion(P);
  // image lies on y^2 = x^3 + x over the extension
  Fp2Element lhs = D.y() * D.y();
  Fp2Element rhs = D.x() * D.x() * D.x() + D.x();
  CHECK(lhs == rhs);

  // applying the map twice (symbolically on extension coordinates) negates y
  const Modulus& p = pp.field();
  Fp2Element i(RingElement::zero(p), RingElement::one(p));
  Fp2Element minus_one(RingElement(-1, p), RingElement::zero(p));
  Fp2Point DD(D.x() * minus_one, D.y() * i);
  CHECK(DD.x() == Fp2Element::from_base(P.x()));
  CHECK(DD.y() == Fp2Element::from_base(-P.y()));
}

TEST_CASE("degenerate pairings are one") {
  const PairingParams& pp = toy32();
  Rng rng(22);
  Point A = testing::random_subgroup_point(pp, rng);
  CHECK(tate_pairing(A, Point::infinity(), pp).is_one());
  CHECK(tate_pairing(Point::infinity(), A, pp).is_one());
  CHECK(miller_loop(Point::infinity(), distortion(A), pp).is_one());
}

TEST_CASE("non-degeneracy and output order") {
  const PairingParams& pp = toy32();
  GtElement z = tate_pairing(pp.generator(), pp.generator(), pp);
  CHECK_FALSE(z.is_one());
  CHECK(gt_pow(z, pp.r).is_one());  // exact order r since r is prime
}

TEST_CASE("bilinearity in each slot") {
  const PairingParams& pp = toy32();
  Rng rng(23);
  for (int t = 0; t < 25; ++t) {
    Point A = testing::random_subgroup_point(pp, rng);
    Point B = testing::random_subgroup_point(pp, rng);
    GtElement base = tate_pairing(A, B, pp);
    // doubling a slot squares the output
    CHECK(tate_pairing(point_double(A, pp.curve), B, pp) == gt_mul(base, base));
    mpz_class a = rng.below(pp.r), b = rng.below(pp.r);
    GtElement lhs = tate_pairing(scalar_multi(A, a, pp.curve), scalar_multi(B, b, pp.curve), pp);
    CHECK(lhs == gt_pow(base, a * b % pp.r));
    // symmetric under the distortion construction
    CHECK(tate_pairing(A, B, pp) == tate_pairing(B, A, pp));
    CHECK(gt_pow(base, pp.r).is_one());
  }
}

TEST_CASE("tiny curve: exhaustive bilinearity-consistent table") {
  const PairingParams& pp = tiny_curve();
  REQUIRE(pp.field().value() < 1000);
  unsigned long r = pp.r.get_ui();

  // enumerate the whole subgroup by repeated addition
  std::vector<Point> subgroup{Point::infinity()};
  for (unsigned long i = 1; i < r; ++i)
    subgroup.push_back(point_add(subgroup.back(), pp.generator(), pp.curve));
  REQUIRE(point_add(subgroup.back(), pp.generator(), pp.curve).is_infinity());

  GtElement z = tate_pairing(pp.generator(), pp.generator(), pp);
  REQUIRE_FALSE(z.is_one());
  REQUIRE(gt_pow(z, pp.r).is_one());
  for (unsigned long i = 0; i < r; ++i) {
    for (unsigned long j = 0; j < r; ++j) {
      GtElement e = tate_pairing(subgroup[i], subgroup[j], pp);
      CHECK(e == gt_pow(z, mpz_class(i * j % r)));
      CHECK(gt_pow(e, pp.r).is_one());
    }
  }
}

TEST_CASE("degenerate line evaluations are surfaced, not absorbed") {
  // A crafted evaluation point sharing the x-coordinate of 2P sits on the
  // first vertical line of the accumulation. Valid subgroup images can never
  // do this (their x-coordinates are off-limits to F_p points).
  const PairingParams& pp = toy32();
  Rng rng(24);
  Point P = testing::random_subgroup_point(pp, rng);
  Point P2 = point_double(P, pp.curve);
  Fp2Point crafted(Fp2Element::from_base(P2.x()),
                   Fp2Element(RingElement::zero(pp.field()), RingElement::one(pp.field())));
  CHECK_THROWS_AS(miller_loop(P, crafted, pp), ZeroEvaluation);
}

TEST_CASE("lift rejects non-residues") {
  const PairingParams& pp = tiny_curve();
  const mpz_class& p = pp.field().value();
  int rejected = 0;
  for (mpz_class x = 0; x < p; ++x) {
    try {
      lift(x, pp.curve);
    } catch (const NonResidue&) {
      ++rejected;
    }
  }
  // roughly half of all x have no y; exact count is curve-specific
  CHECK(rejected > 0);
  CHECK(rejected < p);
}

TEST_CASE("parameter generation structure and determinism") {
  PairingParams a = generate_pairing_params(34, 22, 5);
  PairingParams b = generate_pairing_params(34, 22, 5);
  CHECK(a.field().value() == b.field().value());
  CHECK(a.r == b.r);
  CHECK(a.generator() == b.generator());
  CHECK(a.field().bit_length() == 34);
  CHECK(mpz_sizeinbase(a.r.get_mpz_t(), 2) == 22);
  CHECK((a.field().value() + 1) % a.r == 0);
  CHECK(a.field().value() % 4 == 3);
  a.validate();

  PairingParams c = generate_pairing_params(34, 22, 6);
  CHECK(c.field().value() != a.field().value());
}

TEST_CASE("parameter search budget is enforced") {
  // p = 2r - 1 with odd r is always 1 mod 4, so this shape can never
  // satisfy the 3-mod-4 requirement and must exhaust its budget.
  CHECK_THROWS_AS(generate_pairing_params(21, 20, 1, "", 2000), ParamSearchExhausted);
}

TEST_CASE("validate rejects corrupted parameters") {
  PairingParams pp = generate_pairing_params(30, 18, 9);
  PairingParams bad = pp;
  bad.r += 2;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = pp;
  bad.curve.generator = Point(RingElement(1, pp.field()), RingElement(1, pp.field()));
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = pp;
  bad.final_exp += 1;
  CHECK_THROWS_AS(bad.validate(), Error);
}
