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

#include <cstdint>
#include <memory>

namespace pairsource {

/// Deterministic arbitrary-precision RNG (Mersenne Twister via GMP).
/// Everything downstream of a seed is reproducible; fork() derives an
/// independent child stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  ~Rng();
  Rng(Rng&&) noexcept;
  Rng& operator=(Rng&&) noexcept;
  Rng(const Rng&) = delete;
  Rng& operator=(const Rng&) = delete;

  /// Uniform in [0, bound). bound must be >= 1.
  mpz_class below(const mpz_class& bound);
  /// Uniform in [lo, hi). Requires lo < hi.
  mpz_class range(const mpz_class& lo, const mpz_class& hi);
  /// Uniform in [0, 2^n).
  mpz_class bits(unsigned n);
  /// Uniform n-bit value with the top bit set: [2^(n-1), 2^n).
  mpz_class exact_bits(unsigned n);

  std::uint64_t u64();
  bool coin();
  Rng fork();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace pairsource
