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

#include <cstdint>
#include <vector>

#include "pairsource/client.hpp"
#include "pairsource/params_io.hpp"

namespace pairsource::testing {

// Shared presets, generated once per process with pinned seeds.
inline const PairingParams& tiny_curve() {  // p < 1000, full subgroup enumerable
  static const PairingParams pp = generate_pairing_params(9, 5, 77, "tiny");
  return pp;
}

inline const PairingParams& toy32() {
  static const PairingParams pp = make_preset("toy-32", 1001);
  return pp;
}

inline const PairingParams& toy64() {
  static const PairingParams pp = make_preset("toy-64", 1002);
  return pp;
}

inline Point random_subgroup_point(const PairingParams& pp, Rng& rng) {
  for (;;) {
    mpz_class x = rng.below(pp.field().value());
    try {
      Point p = lift(x, pp.curve);
      if (!p.is_infinity()) return p;
    } catch (const NonResidue&) {
    }
  }
}

/// Independent probable-prime oracle: plain Miller-Rabin witness loop,
/// sharing no code with the library's primality path.
inline bool miller_rabin_oracle(const mpz_class& n, int rounds, std::uint64_t seed) {
  if (n < 2) return false;
  if (n == 2 || n == 3) return true;
  if (mpz_even_p(n.get_mpz_t())) return false;
  mpz_class d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  gmp_randstate_t st;
  gmp_randinit_default(st);
  gmp_randseed_ui(st, seed);
  mpz_class bound = n - 3;
  for (int i = 0; i < rounds; ++i) {
    mpz_class a;
    mpz_urandomm(a.get_mpz_t(), st, bound.get_mpz_t());
    a += 2;  // witness in [2, n-2]
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned long r = 1; r < s; ++r) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) {
      gmp_randclear(st);
      return false;
    }
  }
  gmp_randclear(st);
  return true;
}

struct HonestPair {
  std::shared_ptr<ServerCore> u1_core, u2_core;
  std::unique_ptr<InProcessTransport> u1, u2;

  explicit HonestPair(const PairingParams& pp,
                      BehaviorConfig b1 = BehaviorConfig{},
                      BehaviorConfig b2 = BehaviorConfig{}) {
    u1_core = std::make_shared<ServerCore>(pp, b1);
    u2_core = std::make_shared<ServerCore>(pp, b2);
    u1 = std::make_unique<InProcessTransport>(u1_core);
    u2 = std::make_unique<InProcessTransport>(u2_core);
  }
};

}  // namespace pairsource::testing
