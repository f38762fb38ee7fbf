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

#include <nlohmann/json_fwd.hpp>
#include <vector>

#include "pairsource/client.hpp"

namespace pairsource {

enum class ProtocolKind { scalar_mult, pairing_delegation };
enum class TransportKind { in_process, tcp };

/// One delegation scenario: behaviors for both servers, a trial count, a
/// curve, a seed. Deterministic given the seed; trials run sequentially and
/// both servers live for the whole scenario (so stale-cache behaviors carry
/// state across trials).
struct ScenarioConfig {
  std::string name = "scenario";
  ProtocolKind protocol = ProtocolKind::pairing_delegation;
  BehaviorConfig u1, u2;
  int trials = 100;
  std::uint64_t seed = 1;
  TransportKind transport = TransportKind::in_process;
  unsigned check_exponent_bits = 64;
};

enum class Outcome { accepted_correct, rejected, accepted_wrong };

struct TrialRecord {
  Outcome outcome = Outcome::rejected;
  std::string detail;  // reject stage / error class, empty when accepted
  double wall_ms = 0;
};

struct ScenarioReport {
  std::string name;
  std::string curve;
  std::string protocol;
  std::string u1_behavior, u2_behavior;
  std::string transport;
  int trials = 0;
  std::uint64_t seed = 0;
  int accepted_correct = 0;
  int rejected = 0;
  int accepted_wrong = 0;
  OpCounts client_ops;  // summed over trials, client-side regions only
  double total_wall_ms = 0;
  std::vector<TrialRecord> records;

  /// Timing-free serialization is bit-identical across reruns and
  /// transports; pass include_timing for human output.
  nlohmann::json to_json(bool include_timing) const;
  bool same_outcomes(const ScenarioReport& o) const;
};

ScenarioReport run_scenario(const ScenarioConfig& cfg, const PairingParams& params);

}  // namespace pairsource
