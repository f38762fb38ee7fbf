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

#include "pairsource/pairing.hpp"

#include "pairsource/counters.hpp"

namespace pairsource {

void PairingParams::validate() const {
  const Modulus& p = curve.modulus;
  if (!p.valid() || p.kind() != Modulus::Kind::prime) throw Error("field modulus must be prime");
  if (!probable_prime(p.value())) throw Error("field modulus fails primality test");
  if (p.value() % 4 != 3) throw Error("field modulus must be 3 mod 4");
  if (!(curve.a == RingElement::one(p)) || !curve.b.is_zero())
    throw Error("pairing curve must be y^2 = x^3 + x");
  if (!probable_prime(r)) throw Error("subgroup order must be prime");
  if ((p.value() + 1) % r != 0) throw Error("subgroup order must divide p + 1");
  if (!curve.subgroup_order || *curve.subgroup_order != r)
    throw Error("curve subgroup order disagrees with r");
  if (!curve.cofactor || *curve.cofactor * r != p.value() + 1)
    throw Error("cofactor must equal (p + 1) / r");
  mpz_class p2m1 = p.value() * p.value() - 1;
  if (final_exp * r != p2m1) throw Error("final exponent must equal (p^2 - 1) / r");
  if (!curve.generator) throw Error("generator missing");
  const Point& g = *curve.generator;
  if (g.is_infinity() || !is_on_curve(g, curve)) throw Error("generator not on curve");
  if (!scalar_multi(g, r, curve).is_infinity()) throw Error("generator order does not divide r");
}

Fp2Point distortion(const Point& p) {
  if (p.is_infinity()) return Fp2Point::infinity();
  const Modulus& mod = p.x().modulus();
  Fp2Element x(-p.x(), RingElement::zero(mod));
  Fp2Element y(RingElement::zero(mod), p.y());
  return Fp2Point(std::move(x), std::move(y));
}

namespace {

struct LinePair {
  Fp2Element l;  // line through the step's points, evaluated at Q
  Fp2Element v;  // vertical through the step's output, evaluated at Q
};

Fp2Element embed(const RingElement& t) { return Fp2Element::from_base(t); }

// Tangent at T evaluated at Q; advances T to 2T.
LinePair tangent_step(Point& t, const Fp2Point& q, const CurveParams& curve) {
  const Modulus& p = curve.modulus;
  if (t.is_infinity()) return {Fp2Element::one(p), Fp2Element::one(p)};
  if (t.y().is_zero()) {
    // 2T = infinity: the tangent is the vertical through T, no vertical after.
    Fp2Element l = q.x() - embed(t.x());
    t = Point::infinity();
    return {std::move(l), Fp2Element::one(p)};
  }
  RingElement three(3, p), two(2, p);
  RingElement slope = (three * t.x() * t.x() + curve.a) * (two * t.y()).inverse();
  Fp2Element l = q.y() - embed(t.y()) - fp2_scale(slope, q.x() - embed(t.x()));
  t = point_double(t, curve);
  Fp2Element v = q.x() - embed(t.x());
  return {std::move(l), std::move(v)};
}

// Chord through T and P evaluated at Q; advances T to T + P.
LinePair chord_step(Point& t, const Point& base, const Fp2Point& q, const CurveParams& curve) {
  const Modulus& p = curve.modulus;
  if (t.is_infinity()) {
    t = base;
    return {Fp2Element::one(p), Fp2Element::one(p)};
  }
  if (base.is_infinity()) return {Fp2Element::one(p), Fp2Element::one(p)};
  if (t.x() == base.x()) {
    if ((t.y() + base.y()).is_zero()) {
      // T + P = infinity: vertical chord.
      Fp2Element l = q.x() - embed(t.x());
      t = Point::infinity();
      return {std::move(l), Fp2Element::one(p)};
    }
    return tangent_step(t, q, curve);  // T == P
  }
  RingElement slope = (base.y() - t.y()) * (base.x() - t.x()).inverse();
  Fp2Element l = q.y() - embed(t.y()) - fp2_scale(slope, q.x() - embed(t.x()));
  t = point_add(t, base, curve);
  Fp2Element v = t.is_infinity() ? Fp2Element::one(p) : q.x() - embed(t.x());
  return {std::move(l), std::move(v)};
}

void accumulate(Fp2Element& num, Fp2Element& den, const LinePair& lp) {
  if (lp.l.is_zero() || lp.v.is_zero()) throw ZeroEvaluation("line vanishes at Q");
  num = num * lp.l;
  den = den * lp.v;
}

}  // namespace

Fp2Element miller_loop(const Point& p, const Fp2Point& q, const PairingParams& pp) {
  const Modulus& field = pp.field();
  if (p.is_infinity() || q.is_infinity()) return Fp2Element::one(field);
  Fp2Element num = Fp2Element::one(field);
  Fp2Element den = Fp2Element::one(field);
  Point t = p;
  const mpz_class& r = pp.r;
  const std::size_t nbits = mpz_sizeinbase(r.get_mpz_t(), 2);
  for (std::size_t i = nbits - 1; i-- > 0;) {
    num = num * num;
    den = den * den;
    accumulate(num, den, tangent_step(t, q, pp.curve));
    if (mpz_tstbit(r.get_mpz_t(), i)) {
      accumulate(num, den, chord_step(t, p, q, pp.curve));
    }
  }
  return num * den.inverse();
}

GtElement gt_mul(const GtElement& a, const GtElement& b) {
  ++op_counts().gt_mul;
  return GtElement(a.value() * b.value());
}

GtElement gt_pow(const GtElement& a, const mpz_class& e) {
  ++op_counts().gt_exp;
  return GtElement(fp2_pow(a.value(), e));
}

GtElement tate_pairing(const Point& a, const Point& b, const PairingParams& pp) {
  ++op_counts().pairing;
  if (a.is_infinity() || b.is_infinity()) return GtElement::one(pp.field());
  Fp2Element f = miller_loop(a, distortion(b), pp);
  return GtElement(fp2_pow(f, pp.final_exp));
}

PairingParams generate_pairing_params(unsigned p_bits, unsigned r_bits, std::uint64_t seed,
                                      const std::string& name, int max_candidate_tests) {
  if (r_bits < 3 || p_bits <= r_bits) throw std::invalid_argument("bad bit sizes");
  Rng rng(seed);
  int tests = 0;
  for (;;) {
    Modulus r_mod = rand_prime(r_bits, rng);
    const mpz_class r = r_mod.value();
    // Even k with p = k*r - 1 landing in [2^(p_bits-1), 2^p_bits).
    mpz_class k_lo = ((mpz_class(1) << (p_bits - 1)) + r) / r;  // ceil(2^(p_bits-1)+1 / r)
    mpz_class k_hi = (mpz_class(1) << p_bits) / r;
    if (mpz_odd_p(k_lo.get_mpz_t())) ++k_lo;
    if (k_lo > k_hi) continue;
    mpz_class span = (k_hi - k_lo) / 2 + 1;  // number of even candidates
    mpz_class k = k_lo + 2 * rng.below(span);
    for (mpz_class step = 0; step < span; ++step) {
      if (++tests > max_candidate_tests)
        throw ParamSearchExhausted("pairing parameter search exceeded its attempt budget");
      mpz_class p = k * r - 1;
      if (p % 4 == 3 && mpz_sizeinbase(p.get_mpz_t(), 2) == p_bits && probable_prime(p)) {
        Modulus field = Modulus::prime_unchecked(p);
        CurveParams curve = CurveParams::prime_field(1, 0, field, r, k);
        // Generator: lift a random x (lift clears the cofactor) until nonzero.
        for (;;) {
          mpz_class x = rng.below(p);
          try {
            Point g = lift(x, curve);
            if (g.is_infinity()) continue;
            curve.generator = g;
            break;
          } catch (const NonResidue&) {
            continue;
          }
        }
        PairingParams pp;
        pp.name = name.empty() ? "p" + std::to_string(p_bits) : name;
        pp.curve = std::move(curve);
        pp.r = r;
        pp.final_exp = (p * p - 1) / r;
        pp.validate();
        return pp;
      }
      k += 2;
      if (k > k_hi) k = k_lo;  // wrap within the window
    }
  }
}

}  // namespace pairsource
