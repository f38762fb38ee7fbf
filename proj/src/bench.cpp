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

#include "pairsource/bench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace pairsource {

namespace {

struct Series {
  std::vector<double> ms;
  OpCounts ops_total;

  void add(double v, const OpCounts& ops) {
    ms.push_back(v);
    ops_total += ops;
  }

  BenchRow finish(const std::string& curve, const std::string& phase) const {
    BenchRow row;
    row.curve = curve;
    row.phase = phase;
    row.trials = static_cast<int>(ms.size());
    double sum = 0;
    for (double v : ms) sum += v;
    row.mean_ms = ms.empty() ? 0 : sum / ms.size();
    double var = 0;
    for (double v : ms) var += (v - row.mean_ms) * (v - row.mean_ms);
    row.stddev_ms = ms.size() > 1 ? std::sqrt(var / (ms.size() - 1)) : 0;
    if (!ms.empty()) {
      auto avg = [&](std::uint64_t t) { return t / ms.size(); };
      row.mean_ops.mod_add = avg(ops_total.mod_add);
      row.mean_ops.mod_sub = avg(ops_total.mod_sub);
      row.mean_ops.mod_mul = avg(ops_total.mod_mul);
      row.mean_ops.mod_inv = avg(ops_total.mod_inv);
      row.mean_ops.fp2_mul = avg(ops_total.fp2_mul);
      row.mean_ops.fp2_pow = avg(ops_total.fp2_pow);
      row.mean_ops.point_add = avg(ops_total.point_add);
      row.mean_ops.point_double = avg(ops_total.point_double);
      row.mean_ops.scalar_mul = avg(ops_total.scalar_mul);
      row.mean_ops.pairing = avg(ops_total.pairing);
      row.mean_ops.gt_mul = avg(ops_total.gt_mul);
      row.mean_ops.gt_exp = avg(ops_total.gt_exp);
    }
    return row;
  }
};

Point random_subgroup_point(const PairingParams& pp, Rng& rng) {
  for (;;) {
    mpz_class x = rng.below(pp.field().value());
    try {
      Point p = lift(x, pp.curve);
      if (!p.is_infinity()) return p;
    } catch (const NonResidue&) {
    }
  }
}

}  // namespace

std::vector<BenchRow> run_bench(const PairingParams& params, int trials, std::uint64_t seed) {
  using Clock = std::chrono::steady_clock;
  auto ms_since = [](Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };

  auto u1 = std::make_shared<ServerCore>(params, BehaviorConfig{});
  auto u2 = std::make_shared<ServerCore>(params, BehaviorConfig{});
  InProcessTransport t1(u1), t2(u2);

  Rng rng(seed);
  Series transform, sm_total, pair_queries, verify, recover, client_total, local_pairing;

  for (int i = 0; i < trials; ++i) {
    Point a = random_subgroup_point(params, rng);
    Point b = random_subgroup_point(params, rng);
    OutsourcingClient client(params, t1, t2, rng.u64());

    BpsmRunStats stats;
    GtElement delegated = client.delegate_pairing(a, b, &stats);

    transform.add(stats.transform_ms, stats.transform_ops);
    sm_total.add(stats.sm_total_ms, stats.sm_total_ops);
    pair_queries.add(stats.pair_queries_ms, stats.pair_queries_ops);
    verify.add(stats.verify_ms, stats.verify_ops);
    recover.add(stats.recover_ms, stats.recover_ops);
    client_total.add(stats.client_total_ms(), stats.client_ops);

    OpCounts before = snapshot_ops();
    auto t0 = Clock::now();
    GtElement local = tate_pairing(a, b, params);
    local_pairing.add(ms_since(t0), snapshot_ops() - before);
    if (!(local == delegated)) throw Error("bench: delegated result disagrees with local pairing");
  }

  return {
      transform.finish(params.name, "transform"),
      sm_total.finish(params.name, "sm_total"),
      pair_queries.finish(params.name, "pair_queries"),
      verify.finish(params.name, "verify"),
      recover.finish(params.name, "recover"),
      client_total.finish(params.name, "client_total"),
      local_pairing.finish(params.name, "local_pairing"),
  };
}

std::string bench_csv_header() {
  return "curve,phase,mean_ms,stddev_ms,trials,mod_add,mod_sub,mod_mul,mod_inv,fp2_mul,fp2_pow,"
         "point_add,point_double,scalar_mul,pairing,gt_mul,gt_exp";
}

std::string bench_csv_row(const BenchRow& r) {
  std::ostringstream os;
  os.precision(6);
  os << std::fixed;
  os << r.curve << ',' << r.phase << ',' << r.mean_ms << ',' << r.stddev_ms << ',' << r.trials
     << ',' << r.mean_ops.mod_add << ',' << r.mean_ops.mod_sub << ',' << r.mean_ops.mod_mul << ','
     << r.mean_ops.mod_inv << ',' << r.mean_ops.fp2_mul << ',' << r.mean_ops.fp2_pow << ','
     << r.mean_ops.point_add << ',' << r.mean_ops.point_double << ',' << r.mean_ops.scalar_mul
     << ',' << r.mean_ops.pairing << ',' << r.mean_ops.gt_mul << ',' << r.mean_ops.gt_exp;
  return os.str();
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::string out = bench_csv_header() + "\n";
  for (const BenchRow& r : rows) out += bench_csv_row(r) + "\n";
  return out;
}

}  // namespace pairsource
