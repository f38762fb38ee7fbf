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

#include "pairsource/counters.hpp"

namespace pairsource {

OpCounts& OpCounts::operator+=(const OpCounts& o) {
  mod_add += o.mod_add;
  mod_sub += o.mod_sub;
  mod_mul += o.mod_mul;
  mod_inv += o.mod_inv;
  fp2_mul += o.fp2_mul;
  fp2_pow += o.fp2_pow;
  point_add += o.point_add;
  point_double += o.point_double;
  scalar_mul += o.scalar_mul;
  pairing += o.pairing;
  gt_mul += o.gt_mul;
  gt_exp += o.gt_exp;
  return *this;
}

OpCounts OpCounts::operator-(const OpCounts& o) const {
  OpCounts d;
  d.mod_add = mod_add - o.mod_add;
  d.mod_sub = mod_sub - o.mod_sub;
  d.mod_mul = mod_mul - o.mod_mul;
  d.mod_inv = mod_inv - o.mod_inv;
  d.fp2_mul = fp2_mul - o.fp2_mul;
  d.fp2_pow = fp2_pow - o.fp2_pow;
  d.point_add = point_add - o.point_add;
  d.point_double = point_double - o.point_double;
  d.scalar_mul = scalar_mul - o.scalar_mul;
  d.pairing = pairing - o.pairing;
  d.gt_mul = gt_mul - o.gt_mul;
  d.gt_exp = gt_exp - o.gt_exp;
  return d;
}

OpCounts& op_counts() {
  thread_local OpCounts counts;
  return counts;
}

}  // namespace pairsource
