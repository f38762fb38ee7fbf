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

#include "pairsource/algebra.hpp"

#include "pairsource/counters.hpp"

namespace pairsource {

bool probable_prime(const mpz_class& n, int rounds) {
  return mpz_probab_prime_p(n.get_mpz_t(), rounds) != 0;
}

Modulus Modulus::prime(mpz_class value) {
  if (value < 2) throw Error("modulus must be >= 2");
  if (!probable_prime(value)) throw Error("modulus marked prime fails primality test");
  return Modulus(std::make_shared<const Rep>(Rep{std::move(value), Kind::prime}));
}

Modulus Modulus::prime_unchecked(mpz_class value) {
  return Modulus(std::make_shared<const Rep>(Rep{std::move(value), Kind::prime}));
}

Modulus Modulus::composite(mpz_class value) {
  if (value < 2) throw Error("modulus must be >= 2");
  return Modulus(std::make_shared<const Rep>(Rep{std::move(value), Kind::composite}));
}

bool Modulus::operator==(const Modulus& o) const {
  if (rep_ == o.rep_) return true;
  if (!rep_ || !o.rep_) return false;
  return rep_->kind == o.rep_->kind && rep_->value == o.rep_->value;
}

namespace {

const Modulus& require_same(const Modulus& a, const Modulus& b) {
  if (!(a == b)) throw ModulusMismatch("ring elements have different moduli");
  return a;
}

}  // namespace

RingElement::RingElement(const mpz_class& v, Modulus m) : mod_(std::move(m)) {
  if (!mod_.valid()) throw Error("ring element needs a modulus");
  mpz_mod(residue_.get_mpz_t(), v.get_mpz_t(), mod_.value().get_mpz_t());
}

RingElement RingElement::operator+(const RingElement& o) const {
  require_same(mod_, o.mod_);
  ++op_counts().mod_add;
  mpz_class s = residue_ + o.residue_;
  if (s >= mod_.value()) s -= mod_.value();
  RingElement out;
  out.residue_ = std::move(s);
  out.mod_ = mod_;
  return out;
}

RingElement RingElement::operator-(const RingElement& o) const {
  require_same(mod_, o.mod_);
  ++op_counts().mod_sub;
  mpz_class s = residue_ - o.residue_;
  if (s < 0) s += mod_.value();
  RingElement out;
  out.residue_ = std::move(s);
  out.mod_ = mod_;
  return out;
}

RingElement RingElement::operator*(const RingElement& o) const {
  require_same(mod_, o.mod_);
  ++op_counts().mod_mul;
  RingElement out;
  mpz_class prod = residue_ * o.residue_;
  mpz_mod(out.residue_.get_mpz_t(), prod.get_mpz_t(), mod_.value().get_mpz_t());
  out.mod_ = mod_;
  return out;
}

RingElement RingElement::operator-() const {
  RingElement out;
  out.residue_ = residue_ == 0 ? mpz_class(0) : mpz_class(mod_.value() - residue_);
  out.mod_ = mod_;
  return out;
}

bool RingElement::operator==(const RingElement& o) const {
  return mod_ == o.mod_ && residue_ == o.residue_;
}

RingElement RingElement::inverse() const {
  ++op_counts().mod_inv;
  RingElement out;
  if (mpz_invert(out.residue_.get_mpz_t(), residue_.get_mpz_t(), mod_.value().get_mpz_t()) == 0) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), residue_.get_mpz_t(), mod_.value().get_mpz_t());
    throw NotInvertible(std::move(g));
  }
  out.mod_ = mod_;
  return out;
}

RingElement RingElement::pow(const mpz_class& e) const {
  if (e < 0) throw std::invalid_argument("RingElement::pow: negative exponent");
  RingElement out;
  mpz_powm(out.residue_.get_mpz_t(), residue_.get_mpz_t(), e.get_mpz_t(),
           mod_.value().get_mpz_t());
  out.mod_ = mod_;
  return out;
}

RingElement mod_add(const RingElement& a, const RingElement& b) { return a + b; }
RingElement mod_sub(const RingElement& a, const RingElement& b) { return a - b; }
RingElement mod_mul(const RingElement& a, const RingElement& b) { return a * b; }
RingElement mod_inv(const RingElement& a) { return a.inverse(); }

Fp2Element::Fp2Element(RingElement c0, RingElement c1) : c0_(std::move(c0)), c1_(std::move(c1)) {
  require_same(c0_.modulus(), c1_.modulus());
}

Fp2Element Fp2Element::zero(const Modulus& p) {
  return Fp2Element(RingElement::zero(p), RingElement::zero(p));
}

Fp2Element Fp2Element::one(const Modulus& p) {
  return Fp2Element(RingElement::one(p), RingElement::zero(p));
}

Fp2Element Fp2Element::from_base(const RingElement& c0) {
  return Fp2Element(c0, RingElement::zero(c0.modulus()));
}

bool Fp2Element::is_one() const { return c0_.residue() == 1 && c1_.is_zero(); }

Fp2Element Fp2Element::operator+(const Fp2Element& o) const {
  return Fp2Element(c0_ + o.c0_, c1_ + o.c1_);
}

Fp2Element Fp2Element::operator-(const Fp2Element& o) const {
  return Fp2Element(c0_ - o.c0_, c1_ - o.c1_);
}

Fp2Element Fp2Element::operator*(const Fp2Element& o) const {
  ++op_counts().fp2_mul;
  // (a0 + a1 i)(b0 + b1 i) = (a0 b0 - a1 b1) + (a0 b1 + a1 b0) i
  RingElement r0 = c0_ * o.c0_ - c1_ * o.c1_;
  RingElement r1 = c0_ * o.c1_ + c1_ * o.c0_;
  return Fp2Element(std::move(r0), std::move(r1));
}

bool Fp2Element::operator==(const Fp2Element& o) const { return c0_ == o.c0_ && c1_ == o.c1_; }

Fp2Element Fp2Element::conjugate() const { return Fp2Element(c0_, -c1_); }

Fp2Element Fp2Element::inverse() const {
  RingElement norm = c0_ * c0_ + c1_ * c1_;
  RingElement inv = norm.inverse();
  return Fp2Element(c0_ * inv, (-c1_) * inv);
}

Fp2Element fp2_mul(const Fp2Element& a, const Fp2Element& b) { return a * b; }

Fp2Element fp2_pow(const Fp2Element& a, const mpz_class& e) {
  if (e < 0) throw std::invalid_argument("fp2_pow: negative exponent");
  ++op_counts().fp2_pow;
  const Modulus& p = a.field();
  Fp2Element acc = Fp2Element::one(p);
  const std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return acc;
  for (std::size_t i = nbits; i-- > 0;) {
    acc = acc * acc;
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * a;
  }
  return acc;
}

Fp2Element fp2_scale(const RingElement& s, const Fp2Element& a) {
  return Fp2Element(s * a.c0(), s * a.c1());
}

Modulus rand_prime(unsigned bits, Rng& rng) {
  if (bits < 2) throw std::invalid_argument("rand_prime: bits too small");
  for (;;) {
    mpz_class cand = rng.exact_bits(bits);
    mpz_setbit(cand.get_mpz_t(), 0);
    if (probable_prime(cand)) return Modulus::prime_unchecked(std::move(cand));
  }
}

}  // namespace pairsource
