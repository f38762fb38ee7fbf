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

#include "pairsource/rng.hpp"

#include <gmp.h>

#include <stdexcept>

namespace pairsource {

struct Rng::Impl {
  gmp_randstate_t state;
};

Rng::Rng(std::uint64_t seed) : impl_(std::make_unique<Impl>()) {
  gmp_randinit_mt(impl_->state);
  mpz_class s;
  mpz_import(s.get_mpz_t(), 1, 1, sizeof(seed), 0, 0, &seed);
  gmp_randseed(impl_->state, s.get_mpz_t());
}

Rng::~Rng() {
  if (impl_) gmp_randclear(impl_->state);
}

Rng::Rng(Rng&&) noexcept = default;
Rng& Rng::operator=(Rng&&) noexcept = default;

mpz_class Rng::below(const mpz_class& bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::below: bound must be positive");
  mpz_class out;
  mpz_urandomm(out.get_mpz_t(), impl_->state, bound.get_mpz_t());
  return out;
}

mpz_class Rng::range(const mpz_class& lo, const mpz_class& hi) {
  if (lo >= hi) throw std::invalid_argument("Rng::range: empty range");
  return lo + below(hi - lo);
}

mpz_class Rng::bits(unsigned n) {
  mpz_class out;
  mpz_urandomb(out.get_mpz_t(), impl_->state, n);
  return out;
}

mpz_class Rng::exact_bits(unsigned n) {
  if (n == 0) throw std::invalid_argument("Rng::exact_bits: n must be positive");
  mpz_class out = bits(n);
  mpz_setbit(out.get_mpz_t(), n - 1);
  return out;
}

std::uint64_t Rng::u64() {
  mpz_class v = bits(64);
  std::uint64_t out = 0;
  // Low 32 bits, then high 32 bits; mpz_get_ui alone truncates on 32-bit longs.
  mpz_class lo = v & mpz_class{0xffffffffUL};
  mpz_class hi = v >> 32;
  out = static_cast<std::uint64_t>(mpz_get_ui(hi.get_mpz_t())) << 32 |
        static_cast<std::uint64_t>(mpz_get_ui(lo.get_mpz_t()));
  return out;
}

bool Rng::coin() { return mpz_get_ui(bits(1).get_mpz_t()) != 0; }

Rng Rng::fork() { return Rng(u64()); }

}  // namespace pairsource
