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

#include <gmpxx.h>

#include <cstddef>
#include <memory>

#include "pairsource/errors.hpp"
#include "pairsource/rng.hpp"

namespace pairsource {

constexpr int kPrimalityRounds = 64;

/// Miller–Rabin style probable-prime test (GMP mpz_probab_prime_p).
bool probable_prime(const mpz_class& n, int rounds = kPrimalityRounds);

/// Immutable modulus, shared by the elements living in its ring.
/// A prime modulus is a field (F_p); a composite one is the blinded
/// server-side arena Z_N with N = pq.
class Modulus {
 public:
  enum class Kind { prime, composite };

  Modulus() = default;  // null placeholder; any arithmetic use is invalid

  /// Validating constructor: checks value >= 2 and, for primes, 64 rounds
  /// of probable-primality. Use for externally supplied values.
  static Modulus prime(mpz_class value);
  static Modulus composite(mpz_class value);
  /// Non-validating prime constructor for values already tested (e.g.
  /// rand_prime output, which tests every candidate it emits).
  static Modulus prime_unchecked(mpz_class value);

  bool valid() const { return rep_ != nullptr; }
  const mpz_class& value() const { return rep_->value; }
  Kind kind() const { return rep_->kind; }
  std::size_t bit_length() const { return mpz_sizeinbase(rep_->value.get_mpz_t(), 2); }

  bool operator==(const Modulus& o) const;

 private:
  struct Rep {
    mpz_class value;
    Kind kind;
  };
  explicit Modulus(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

/// A fully reduced residue in Z_m. Immutable value type; all operations are
/// pure and throw ModulusMismatch when operands disagree on the modulus.
class RingElement {
 public:
  RingElement() = default;
  /// Reduces v into [0, m); negative v is handled.
  RingElement(const mpz_class& v, Modulus m);

  static RingElement zero(const Modulus& m) { return RingElement(0, m); }
  static RingElement one(const Modulus& m) { return RingElement(1, m); }

  const mpz_class& residue() const { return residue_; }
  const Modulus& modulus() const { return mod_; }
  bool is_zero() const { return residue_ == 0; }

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator-() const;
  bool operator==(const RingElement& o) const;

  /// Modular inverse. Throws NotInvertible{gcd} when gcd(residue, m) != 1;
  /// over Z_N that event exposes a factor of N and the session must be
  /// discarded.
  RingElement inverse() const;
  /// Square-and-multiply power, e >= 0.
  RingElement pow(const mpz_class& e) const;

 private:
  mpz_class residue_;
  Modulus mod_;
};

RingElement mod_add(const RingElement& a, const RingElement& b);
RingElement mod_sub(const RingElement& a, const RingElement& b);
RingElement mod_mul(const RingElement& a, const RingElement& b);
RingElement mod_inv(const RingElement& a);

/// Element of F_{p^2} = F_p[i]/(i^2 + 1), stored as c0 + c1*i.
/// Requires p = 3 (mod 4) so that i^2 = -1 is a non-residue; validated at
/// parameter level, not per element.
class Fp2Element {
 public:
  Fp2Element() = default;
  Fp2Element(RingElement c0, RingElement c1);

  static Fp2Element zero(const Modulus& p);
  static Fp2Element one(const Modulus& p);
  static Fp2Element from_base(const RingElement& c0);

  const RingElement& c0() const { return c0_; }
  const RingElement& c1() const { return c1_; }
  const Modulus& field() const { return c0_.modulus(); }
  bool is_zero() const { return c0_.is_zero() && c1_.is_zero(); }
  bool is_one() const;

  Fp2Element operator+(const Fp2Element& o) const;
  Fp2Element operator-(const Fp2Element& o) const;
  Fp2Element operator*(const Fp2Element& o) const;
  bool operator==(const Fp2Element& o) const;

  Fp2Element conjugate() const;
  /// Inverse via the norm c0^2 + c1^2 (nonzero for nonzero elements when
  /// -1 is a non-residue). Throws NotInvertible on zero.
  Fp2Element inverse() const;

 private:
  RingElement c0_, c1_;
};

Fp2Element fp2_mul(const Fp2Element& a, const Fp2Element& b);
/// Square-and-multiply in F_{p^2}; e >= 0, a^0 = 1.
Fp2Element fp2_pow(const Fp2Element& a, const mpz_class& e);
/// Scale by a base-field element.
Fp2Element fp2_scale(const RingElement& s, const Fp2Element& a);

/// Random probable prime of exactly `bits` bits (bits >= 16 for protocol
/// use; smaller values are permitted for toys/tests). Every emitted value
/// passed the 64-round test.
Modulus rand_prime(unsigned bits, Rng& rng);

}  // namespace pairsource
