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

#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "pairsource/wire.hpp"

namespace pairsource {

/// How a server treats the honest answer before sending it. A scenario
/// configures at most one non-honest server (one-malicious model).
enum class BehaviorKind {
  honest,
  random_output,    // replace every value with fresh randomness
  bit_flip,         // flip one bit somewhere in the response
  identity_output,  // answer with the identity point / identity of G_T
  scale_output,     // multiply points by a fixed unit; scale G_T values by a
                    // fixed unit element
  lazy,             // replay the previous same-kind response (re-tagged)
};

BehaviorKind behavior_from_string(const std::string& s);
std::string behavior_to_string(BehaviorKind k);

struct BehaviorConfig {
  BehaviorKind kind = BehaviorKind::honest;
  std::uint64_t seed = 0;
  mpz_class scale_unit = 2;
  /// Which queries the behavior touches; out-of-scope queries are answered
  /// honestly. Lets a sweep aim an adversary at one protocol stage.
  enum class Scope { all, sm_only, pair_only } scope = Scope::all;
  /// Fixed flip position for bit_flip; random when unset.
  std::optional<unsigned> bit_position;

  bool applies_to_sm() const { return scope != Scope::pair_only; }
  bool applies_to_pair() const { return scope != Scope::sm_only; }
};

/// Answers scalar-mult and pairing queries per its behavior. Thread-safe;
/// concurrent connections share one core (behavior randomness and the lazy
/// cache are serialized).
class ServerCore {
 public:
  ServerCore(PairingParams params, BehaviorConfig behavior);

  WireMessage handle(const WireMessage& request);
  /// Full byte path: frame body in, response frame body out. Both transports
  /// funnel through this, so their visible behavior is identical.
  std::vector<std::uint8_t> handle_body(std::span<const std::uint8_t> body);

  const PairingParams& params() const { return params_; }

 private:
  WireMessage dispatch(const WireMessage& request);
  WireMessage answer_sm_q1(const WireMessage& m);
  WireMessage answer_sm_q2(const WireMessage& m);
  WireMessage answer_pair_q(const WireMessage& m);

  std::vector<RawPoint> tamper_points(std::vector<RawPoint> pts, const Modulus& n,
                                      const RingElement& a_coeff);
  GtElement tamper_gt(GtElement v);
  const GtElement& gt_unit();

  PairingParams params_;
  BehaviorConfig cfg_;
  Rng rng_;
  std::mutex mu_;
  std::map<MsgKind, std::vector<std::uint8_t>> stale_;  // lazy replay cache
  std::optional<GtElement> gt_unit_;                    // scale unit in G_T
};

}  // namespace pairsource
