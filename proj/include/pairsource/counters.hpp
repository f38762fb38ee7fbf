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

namespace pairsource {

/// Running operation tally for one thread. Protocol code attributes work to a
/// party by snapshotting around the regions that party executes; dispatching
/// to a server is never inside a client region, so the attribution holds for
/// both in-process and TCP transports.
struct OpCounts {
  std::uint64_t mod_add = 0;
  std::uint64_t mod_sub = 0;
  std::uint64_t mod_mul = 0;
  std::uint64_t mod_inv = 0;
  std::uint64_t fp2_mul = 0;
  std::uint64_t fp2_pow = 0;
  std::uint64_t point_add = 0;
  std::uint64_t point_double = 0;
  std::uint64_t scalar_mul = 0;
  std::uint64_t pairing = 0;
  std::uint64_t gt_mul = 0;
  std::uint64_t gt_exp = 0;

  OpCounts& operator+=(const OpCounts& o);
  OpCounts operator-(const OpCounts& o) const;
  bool operator==(const OpCounts&) const = default;
};

/// Thread-local running totals, incremented by the instrumented operations.
OpCounts& op_counts();

inline OpCounts snapshot_ops() { return op_counts(); }

}  // namespace pairsource
