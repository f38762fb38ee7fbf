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

#include "pairsource/scenario.hpp"

#include <nlohmann/json.hpp>

#include <chrono>

namespace pairsource {

namespace {

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

ScenarioReport run_scenario(const ScenarioConfig& cfg, const PairingParams& params) {
  if (cfg.u1.kind != BehaviorKind::honest && cfg.u2.kind != BehaviorKind::honest)
    throw Error("one-malicious model: at most one non-honest server");

  ScenarioReport report;
  report.name = cfg.name;
  report.curve = params.name;
  report.protocol = cfg.protocol == ProtocolKind::scalar_mult ? "sm" : "bpsm";
  report.u1_behavior = behavior_to_string(cfg.u1.kind);
  report.u2_behavior = behavior_to_string(cfg.u2.kind);
  report.transport = cfg.transport == TransportKind::in_process ? "inproc" : "tcp";
  report.trials = cfg.trials;
  report.seed = cfg.seed;

  auto u1_core = std::make_shared<ServerCore>(params, cfg.u1);
  auto u2_core = std::make_shared<ServerCore>(params, cfg.u2);
  std::unique_ptr<TcpServer> tcp1, tcp2;
  std::unique_ptr<Transport> t1, t2;
  if (cfg.transport == TransportKind::tcp) {
    tcp1 = std::make_unique<TcpServer>(u1_core);
    tcp2 = std::make_unique<TcpServer>(u2_core);
    t1 = std::make_unique<TcpTransport>("127.0.0.1", tcp1->port());
    t2 = std::make_unique<TcpTransport>("127.0.0.1", tcp2->port());
  } else {
    t1 = std::make_unique<InProcessTransport>(u1_core);
    t2 = std::make_unique<InProcessTransport>(u2_core);
  }

  Rng master(cfg.seed);
  OutsourcingClient client(params, *t1, *t2, master.u64(), cfg.check_exponent_bits);
  auto scenario_start = std::chrono::steady_clock::now();
  for (int trial = 0; trial < cfg.trials; ++trial) {
    TrialRecord rec;
    auto trial_start = std::chrono::steady_clock::now();
    try {
      // The reference value is only computed once the protocol accepted;
      // rejected trials never need it.
      if (cfg.protocol == ProtocolKind::scalar_mult) {
        Point p = random_subgroup_point(params, master);
        mpz_class c = master.below(params.r);
        SmRunStats stats;
        Point got = client.delegate_scalar_mult(p, c, &stats);
        report.client_ops += stats.client_ops;
        Point want = scalar_multi(p, c, params.curve);
        rec.outcome = got == want ? Outcome::accepted_correct : Outcome::accepted_wrong;
      } else {
        Point a = random_subgroup_point(params, master);
        Point b = random_subgroup_point(params, master);
        BpsmRunStats stats;
        GtElement got = client.delegate_pairing(a, b, &stats);
        report.client_ops += stats.client_ops;
        GtElement want = tate_pairing(a, b, params);
        rec.outcome = got == want ? Outcome::accepted_correct : Outcome::accepted_wrong;
      }
    } catch (const VerificationFailed& e) {
      rec.outcome = Outcome::rejected;
      rec.detail = std::string("verification:") + stage_name(e.stage());
    } catch (const ComputationFailed&) {
      rec.outcome = Outcome::rejected;
      rec.detail = "computation-failed";
    } catch (const TransportError&) {
      rec.outcome = Outcome::rejected;
      rec.detail = "transport";
    }
    rec.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - trial_start)
            .count();
    switch (rec.outcome) {
      case Outcome::accepted_correct: ++report.accepted_correct; break;
      case Outcome::rejected: ++report.rejected; break;
      case Outcome::accepted_wrong: ++report.accepted_wrong; break;
    }
    report.records.push_back(std::move(rec));
  }
  report.total_wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - scenario_start)
          .count();
  return report;
}

nlohmann::json ScenarioReport::to_json(bool include_timing) const {
  nlohmann::json j;
  j["name"] = name;
  j["curve"] = curve;
  j["protocol"] = protocol;
  j["u1"] = u1_behavior;
  j["u2"] = u2_behavior;
  // The transport label is config echo, not an outcome: it stays out of the
  // timing-free form so reports from both transports compare equal.
  if (include_timing) j["transport"] = transport;
  j["trials"] = trials;
  j["seed"] = seed;
  j["accepted_correct"] = accepted_correct;
  j["rejected"] = rejected;
  j["accepted_wrong"] = accepted_wrong;
  j["client_ops"] = {
      {"mod_add", client_ops.mod_add},       {"mod_sub", client_ops.mod_sub},
      {"mod_mul", client_ops.mod_mul},       {"mod_inv", client_ops.mod_inv},
      {"fp2_mul", client_ops.fp2_mul},       {"fp2_pow", client_ops.fp2_pow},
      {"point_add", client_ops.point_add},   {"point_double", client_ops.point_double},
      {"scalar_mul", client_ops.scalar_mul}, {"pairing", client_ops.pairing},
      {"gt_mul", client_ops.gt_mul},         {"gt_exp", client_ops.gt_exp},
  };
  nlohmann::json recs = nlohmann::json::array();
  for (const TrialRecord& r : records) {
    nlohmann::json rj;
    rj["outcome"] = r.outcome == Outcome::accepted_correct ? "accepted-correct"
                    : r.outcome == Outcome::rejected       ? "rejected"
                                                           : "accepted-wrong";
    rj["detail"] = r.detail;
    if (include_timing) rj["wall_ms"] = r.wall_ms;
    recs.push_back(std::move(rj));
  }
  j["records"] = std::move(recs);
  if (include_timing) j["total_wall_ms"] = total_wall_ms;
  return j;
}

bool ScenarioReport::same_outcomes(const ScenarioReport& o) const {
  return to_json(false) == o.to_json(false);
}

}  // namespace pairsource
