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

#include "pairsource/curve.hpp"

#include "pairsource/counters.hpp"

namespace pairsource {

CurveParams CurveParams::prime_field(const mpz_class& a, const mpz_class& b, Modulus p,
                                     mpz_class subgroup_order, mpz_class cofactor,
                                     std::optional<Point> generator) {
  if (p.kind() != Modulus::Kind::prime) throw Error("prime_field curve needs a prime modulus");
  CurveParams cp;
  cp.a = RingElement(a, p);
  cp.b = RingElement(b, p);
  cp.modulus = std::move(p);
  // 4a^3 + 27b^2 != 0 keeps the curve nonsingular.
  RingElement four(4, cp.modulus), twentyseven(27, cp.modulus);
  RingElement disc = four * cp.a * cp.a * cp.a + twentyseven * cp.b * cp.b;
  if (disc.is_zero()) throw Error("singular curve: 4a^3 + 27b^2 = 0");
  cp.subgroup_order = std::move(subgroup_order);
  cp.cofactor = std::move(cofactor);
  cp.generator = std::move(generator);
  return cp;
}

CurveParams CurveParams::ring(RingElement a, RingElement b, Modulus n) {
  CurveParams cp;
  cp.a = std::move(a);
  cp.b = std::move(b);
  cp.modulus = std::move(n);
  return cp;
}

Point point_negate(const Point& p) {
  if (p.is_infinity()) return p;
  return Point(p.x(), -p.y());
}

namespace {

Point chord_or_tangent(const RingElement& slope, const Point& p, const Point& q) {
  RingElement x3 = slope * slope - p.x() - q.x();
  RingElement y3 = slope * (p.x() - x3) - p.y();
  return Point(std::move(x3), std::move(y3));
}

}  // namespace

Point point_double(const Point& p, const CurveParams& params) {
  ++op_counts().point_double;
  if (p.is_infinity()) return p;
  if (p.y().is_zero()) return Point::infinity();  // 2-torsion
  RingElement three(3, params.modulus);
  RingElement two(2, params.modulus);
  RingElement num = three * p.x() * p.x() + params.a;
  RingElement slope = num * (two * p.y()).inverse();
  return chord_or_tangent(slope, p, p);
}

Point point_add(const Point& p, const Point& q, const CurveParams& params) {
  ++op_counts().point_add;
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  if (p.x() == q.x()) {
    if ((p.y() + q.y()).is_zero()) return Point::infinity();
    if (p.y() == q.y()) return point_double(p, params);
    // x coordinates collide without matching y's: the chord denominator is
    // zero in this ring (gcd(0, m) = m).
    throw NotInvertible(params.modulus.value());
  }
  RingElement slope = (q.y() - p.y()) * (q.x() - p.x()).inverse();
  return chord_or_tangent(slope, p, q);
}

namespace {

// Extended Euclid on machine words; returns the gcd and, when it is 1,
// writes the inverse of a mod m.
std::uint64_t xgcd_inv_u64(std::uint64_t a, std::uint64_t m, std::uint64_t& inv) {
  std::uint64_t r0 = m, r1 = a;
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::uint64_t q = r0 / r1;
    std::uint64_t r2 = r0 - q * r1;
    __int128 t2 = t0 - static_cast<__int128>(q) * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (r0 == 1) {
    __int128 t = t0 % static_cast<__int128>(m);
    if (t < 0) t += m;
    inv = static_cast<std::uint64_t>(t);
  }
  return r0;
}

// Single-word mirror of the generic chain below, for moduli that fit one
// limb. Same branch structure, same abort semantics.
struct U64Chain {
  std::uint64_t m, a;
  bool acc_inf = true, base_inf = false;
  std::uint64_t ax = 0, ay = 0, bx, by;

  U64Chain(std::uint64_t m, std::uint64_t a, std::uint64_t x, std::uint64_t y)
      : m(m), a(a), bx(x), by(y) {}

  std::uint64_t mul(std::uint64_t x, std::uint64_t y) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % m);
  }
  std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
    std::uint64_t s = x + y;
    if (s < x || s >= m) s -= m;  // handles the 2^64 wrap as well
    return s;
  }
  std::uint64_t sub(std::uint64_t x, std::uint64_t y) const { return x >= y ? x - y : x + (m - y); }

  std::uint64_t invert(std::uint64_t v) const {
    std::uint64_t out;
    std::uint64_t g = xgcd_inv_u64(v, m, out);
    if (g != 1) throw NotInvertible(mpz_class(g == 0 ? m : g));
    return out;
  }

  void step(std::uint64_t& x, std::uint64_t& y, std::uint64_t slope, std::uint64_t ox) {
    std::uint64_t x3 = sub(sub(mul(slope, slope), x), ox);
    std::uint64_t y3 = sub(mul(slope, sub(x, x3)), y);
    x = x3;
    y = y3;
  }

  void double_base() {
    ++op_counts().point_double;
    if (base_inf) return;
    if (by == 0) {
      base_inf = true;
      return;
    }
    std::uint64_t num = add(mul(3 % m, mul(bx, bx)), a);
    std::uint64_t slope = mul(num, invert(add(by, by)));
    step(bx, by, slope, bx);
  }

  void add_base_into_acc() {
    ++op_counts().point_add;
    if (base_inf) return;
    if (acc_inf) {
      acc_inf = false;
      ax = bx;
      ay = by;
      return;
    }
    if (ax == bx) {
      if (add(ay, by) == 0) {
        acc_inf = true;
        return;
      }
      if (ay == by) {
        std::uint64_t num = add(mul(3 % m, mul(ax, ax)), a);
        std::uint64_t slope = mul(num, invert(add(ay, ay)));
        step(ax, ay, slope, ax);
        return;
      }
      throw NotInvertible(mpz_class(m));
    }
    std::uint64_t slope = mul(sub(by, ay), invert(sub(bx, ax)));
    step(ax, ay, slope, bx);
  }
};

// Allocation-free double-and-add workhorse. The chain {acc, base} lives in
// raw mpz storage; every step reduces into [0, m) in place.
struct RawChain {
  const mpz_class& m;
  const mpz_class& a;
  bool acc_inf = true, base_inf = false;
  mpz_class ax, ay, bx, by;
  mpz_class num, den, slope, t;

  explicit RawChain(const CurveParams& params, const Point& start)
      : m(params.modulus.value()), a(params.a.residue()), bx(start.x().residue()),
        by(start.y().residue()) {}

  void invert_den() {
    if (mpz_invert(den.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
      if (g == 0) g = m;
      throw NotInvertible(std::move(g));
    }
  }

  // (x, y) <- chord/tangent output for slope against (x, y) and (ox, oy).
  void apply_slope(mpz_class& x, mpz_class& y, const mpz_class& ox) {
    mpz_mul(t.get_mpz_t(), slope.get_mpz_t(), slope.get_mpz_t());
    mpz_sub(t.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t());
    mpz_sub(t.get_mpz_t(), t.get_mpz_t(), ox.get_mpz_t());
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());  // x3
    mpz_sub(x.get_mpz_t(), x.get_mpz_t(), t.get_mpz_t());  // x1 - x3
    mpz_mul(x.get_mpz_t(), x.get_mpz_t(), slope.get_mpz_t());
    mpz_sub(y.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    mpz_mod(y.get_mpz_t(), y.get_mpz_t(), m.get_mpz_t());
    mpz_swap(x.get_mpz_t(), t.get_mpz_t());
  }

  void double_base() {
    ++op_counts().point_double;
    if (base_inf) return;
    if (by == 0) {
      base_inf = true;
      return;
    }
    mpz_mul(num.get_mpz_t(), bx.get_mpz_t(), bx.get_mpz_t());
    mpz_mul_ui(num.get_mpz_t(), num.get_mpz_t(), 3);
    mpz_add(num.get_mpz_t(), num.get_mpz_t(), a.get_mpz_t());
    mpz_mul_2exp(den.get_mpz_t(), by.get_mpz_t(), 1);
    invert_den();
    mpz_mul(slope.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_mod(slope.get_mpz_t(), slope.get_mpz_t(), m.get_mpz_t());
    apply_slope(bx, by, bx);
  }

  void add_base_into_acc() {
    ++op_counts().point_add;
    if (base_inf) return;
    if (acc_inf) {
      acc_inf = false;
      ax = bx;
      ay = by;
      return;
    }
    if (ax == bx) {
      mpz_add(t.get_mpz_t(), ay.get_mpz_t(), by.get_mpz_t());
      mpz_mod(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
      if (t == 0) {
        acc_inf = true;
        return;
      }
      if (ay == by) {
        // acc == base: tangent step on acc
        mpz_mul(num.get_mpz_t(), ax.get_mpz_t(), ax.get_mpz_t());
        mpz_mul_ui(num.get_mpz_t(), num.get_mpz_t(), 3);
        mpz_add(num.get_mpz_t(), num.get_mpz_t(), a.get_mpz_t());
        mpz_mul_2exp(den.get_mpz_t(), ay.get_mpz_t(), 1);
        invert_den();
        mpz_mul(slope.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        mpz_mod(slope.get_mpz_t(), slope.get_mpz_t(), m.get_mpz_t());
        apply_slope(ax, ay, ax);
        return;
      }
      throw NotInvertible(m);
    }
    mpz_sub(num.get_mpz_t(), by.get_mpz_t(), ay.get_mpz_t());
    mpz_sub(den.get_mpz_t(), bx.get_mpz_t(), ax.get_mpz_t());
    mpz_mod(den.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    invert_den();
    mpz_mul(slope.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_mod(slope.get_mpz_t(), slope.get_mpz_t(), m.get_mpz_t());
    apply_slope(ax, ay, bx);
  }
};

}  // namespace

Point scalar_multi(const Point& p, const mpz_class& n, const CurveParams& params) {
  if (n < 0) throw std::invalid_argument("scalar_multi: negative scalar");
  ++op_counts().scalar_mul;
  if (p.is_infinity() || n == 0) return Point::infinity();
  const std::size_t nbits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (mpz_fits_ulong_p(params.modulus.value().get_mpz_t()) && sizeof(unsigned long) == 8) {
    U64Chain chain(params.modulus.value().get_ui(), params.a.residue().get_ui(),
                   p.x().residue().get_ui(), p.y().residue().get_ui());
    for (std::size_t i = 0; i < nbits; ++i) {
      if (mpz_tstbit(n.get_mpz_t(), i)) chain.add_base_into_acc();
      if (i + 1 < nbits) chain.double_base();
    }
    if (chain.acc_inf) return Point::infinity();
    return Point(RingElement(mpz_class(chain.ax), params.modulus),
                 RingElement(mpz_class(chain.ay), params.modulus));
  }
  RawChain chain(params, p);
  for (std::size_t i = 0; i < nbits; ++i) {
    if (mpz_tstbit(n.get_mpz_t(), i)) chain.add_base_into_acc();
    if (i + 1 < nbits) chain.double_base();
  }
  if (chain.acc_inf) return Point::infinity();
  return Point(RingElement(chain.ax, params.modulus), RingElement(chain.ay, params.modulus));
}

bool is_on_curve(const Point& p, const CurveParams& params) {
  if (p.is_infinity()) return true;
  RingElement lhs = p.y() * p.y();
  RingElement rhs = p.x() * p.x() * p.x() + params.a * p.x() + params.b;
  return lhs == rhs;
}

Point lift(const mpz_class& x, const CurveParams& params) {
  if (!params.is_prime_field() || !params.cofactor)
    throw Error("lift requires prime-field params with a cofactor");
  const mpz_class& p = params.modulus.value();
  RingElement xe(x, params.modulus);
  RingElement rhs = xe * xe * xe + params.a * xe + params.b;
  mpz_class exp = (p + 1) / 4;
  RingElement y = rhs.pow(exp);
  if (!(y * y == rhs)) throw NonResidue("x has no lift onto the curve");
  Point raw(xe, y);
  return scalar_multi(raw, *params.cofactor, params);
}

Point reduce_point(const Point& p, const Modulus& prime) {
  if (p.is_infinity()) return Point::infinity();
  return Point(RingElement(p.x().residue(), prime), RingElement(p.y().residue(), prime));
}

}  // namespace pairsource
