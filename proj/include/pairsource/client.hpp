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

#include "pairsource/bpsm.hpp"
#include "pairsource/counters.hpp"
#include "pairsource/sm.hpp"
#include "pairsource/transport.hpp"

namespace pairsource {

struct SmRunStats {
  OpCounts client_ops;  // work done locally by the client (blinding, checks)
  double transform_ms = 0, verify_ms = 0, recover_ms = 0;
  int attempts = 0;
};

struct BpsmRunStats {
  OpCounts client_ops;  // all client-side work, including the sub-protocol's
  OpCounts check_ops;   // the verify + recover region alone
  // Per-phase operation tallies: everything that ran inside the phase's span,
  // so the dispatch phases include server work when the transport is
  // in-process (how the benchmark runs them).
  OpCounts transform_ops, sm_total_ops, pair_queries_ops, verify_ops, recover_ops;
  double transform_ms = 0;     // coefficient generation + query assembly
  double sm_total_ms = 0;      // the six delegated scalar-mult sessions, end to end
  double pair_queries_ms = 0;  // the four pairing round trips
  double verify_ms = 0;
  double recover_ms = 0;
  int sm_attempts = 0;
  double client_total_ms() const { return transform_ms + verify_ms + recover_ms; }
};

/// Delegation client. Holds nothing but the public parameters, two server
/// connections and an RNG: construction performs no arithmetic and no
/// precomputation (asserted by tests), so a session is usable the moment the
/// inputs arrive.
class OutsourcingClient {
 public:
  OutsourcingClient(PairingParams params, Transport& u1, Transport& u2, std::uint64_t seed,
                    unsigned check_exponent_bits = 64);

  /// Delegated c*P. Retries with fresh blinding when a server reports a
  /// failed computation; throws VerificationFailed{scalar_mult} on a
  /// cross-check mismatch and TransportError on connection trouble.
  Point delegate_scalar_mult(const Point& point, const mpz_class& c, SmRunStats* stats = nullptr);

  /// Delegated e(A, B). Aborts (no retry of a failed transcript) with
  /// VerificationFailed naming the failing stage.
  GtElement delegate_pairing(const Point& a, const Point& b, BpsmRunStats* stats = nullptr);

  const PairingParams& params() const { return params_; }

 private:
  WireMessage exchange(Transport& t, const WireMessage& request);

  PairingParams params_;
  Transport* u1_;
  Transport* u2_;
  Rng rng_;
  unsigned m_;
  static constexpr int kMaxSmAttempts = 8;
};

}  // namespace pairsource
