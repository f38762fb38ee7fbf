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

#include <string>
#include <vector>

#include "pairsource/client.hpp"

namespace pairsource {

/// Per-phase timing of delegated pairing runs against honest in-process
/// servers, next to the cost of computing the pairing locally.
///
/// Phases:
///   transform     client blinding work at the pairing level (coefficient
///                 generation, query assembly, shuffle)
///   sm_total      the six delegated scalar-mult sessions end to end
///                 (their client work, server work and framing)
///   pair_queries  the four pairing round trips (server work and framing)
///   verify        the client's product-and-power check
///   recover       result recovery (reuses the checked product)
///   client_total  transform + verify + recover
///   local_pairing one local pairing evaluation of the same inputs
///
/// Mean operation counts cover whatever ran inside the measured region, so
/// client phases carry client ops and dispatch phases carry server ops.
struct BenchRow {
  std::string curve;
  std::string phase;
  double mean_ms = 0;
  double stddev_ms = 0;
  int trials = 0;
  OpCounts mean_ops;
};

std::vector<BenchRow> run_bench(const PairingParams& params, int trials, std::uint64_t seed);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRow& row);
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace pairsource
