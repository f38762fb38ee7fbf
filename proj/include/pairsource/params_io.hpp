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
#include <string>
#include <vector>

#include "pairsource/pairing.hpp"

namespace pairsource {

/// Named curve sizes. The toy presets keep tests fast; the larger ones feed
/// the benchmark sweeps.
struct PresetSpec {
  std::string name;
  unsigned p_bits;
  unsigned r_bits;
};

const std::vector<PresetSpec>& builtin_presets();
/// Mapping used by parameter generation: p bits -> subgroup bits.
unsigned default_r_bits(unsigned p_bits);

/// Deterministic params for a named preset (or "toy-NN"/"pNNN" form).
PairingParams make_preset(const std::string& name, std::uint64_t seed);

nlohmann::ordered_json params_to_json(const PairingParams& pp);
/// Validates every invariant on load; throws Error on violation.
PairingParams params_from_json(const nlohmann::ordered_json& j);

void save_params(const std::string& path, const PairingParams& pp);
PairingParams load_params(const std::string& path);

}  // namespace pairsource
