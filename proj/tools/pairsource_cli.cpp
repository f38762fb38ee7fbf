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

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <thread>

#include "pairsource/bench.hpp"
#include "pairsource/params_io.hpp"
#include "pairsource/scenario.hpp"

namespace {

using namespace pairsource;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 2;
constexpr int kExitTransport = 3;
constexpr int kExitUsage = 4;

std::uint64_t seed_or_env(CLI::Option* opt, std::uint64_t value) {
  if (opt->count() > 0) return value;
  if (const char* env = std::getenv("PAIRSOURCE_SEED")) return std::strtoull(env, nullptr, 10);
  return value;
}

PairingParams load_or_preset(const std::string& params_arg, std::uint64_t seed) {
  for (const PresetSpec& p : builtin_presets())
    if (p.name == params_arg) return make_preset(params_arg, seed);
  return load_params(params_arg);
}

int cmd_gen(unsigned bits, std::uint64_t seed, const std::string& out) {
  bool known = false;
  for (const PresetSpec& p : builtin_presets()) known |= (p.p_bits == bits);
  if (!known && !(bits >= 32 && bits <= 64)) {
    std::cerr << "gen: --bits must be 32..64 (toys), 160, 256 or 512\n";
    return kExitUsage;
  }
  std::string name = bits <= 64 ? "toy-" + std::to_string(bits) : "p" + std::to_string(bits);
  PairingParams pp = generate_pairing_params(bits, default_r_bits(bits), seed, name);
  if (out.empty()) {
    std::cout << params_to_json(pp).dump(2) << "\n";
  } else {
    save_params(out, pp);
    std::cout << "wrote " << out << " (p " << pp.field().bit_length() << " bits, r "
              << mpz_sizeinbase(pp.r.get_mpz_t(), 2) << " bits)\n";
  }
  return kExitOk;
}

BehaviorConfig::Scope scope_from_string(const std::string& s) {
  if (s == "all") return BehaviorConfig::Scope::all;
  if (s == "sm") return BehaviorConfig::Scope::sm_only;
  if (s == "pair") return BehaviorConfig::Scope::pair_only;
  throw Error("unknown scope: " + s);
}

int cmd_demo(const std::string& params_arg, std::uint64_t seed, const std::string& transport,
             const std::string& u1_behavior, const std::string& u2_behavior,
             const std::string& scope, std::string u1_endpoint, std::string u2_endpoint) {
  PairingParams pp = load_or_preset(params_arg, 9001);
  std::cout << "curve " << pp.name << ": p " << pp.field().bit_length() << " bits, subgroup "
            << mpz_sizeinbase(pp.r.get_mpz_t(), 2) << " bits, cofactor "
            << *pp.curve.cofactor << "\n";

  BehaviorConfig b1{behavior_from_string(u1_behavior), seed ^ 0x5151, 2,
                    scope_from_string(scope), std::nullopt};
  BehaviorConfig b2{behavior_from_string(u2_behavior), seed ^ 0x5252, 2,
                    scope_from_string(scope), std::nullopt};
  std::unique_ptr<RunningServer> s1, s2;
  if (u1_endpoint.empty()) {
    s1 = serve(transport == "tcp" ? "tcp:127.0.0.1:0" : "inproc:demo-u1", pp, b1);
    u1_endpoint = s1->endpoint();
    std::cout << "hosting U1 at " << u1_endpoint << " (" << u1_behavior << ")\n";
  }
  if (u2_endpoint.empty()) {
    s2 = serve(transport == "tcp" ? "tcp:127.0.0.1:0" : "inproc:demo-u2", pp, b2);
    u2_endpoint = s2->endpoint();
    std::cout << "hosting U2 at " << u2_endpoint << " (" << u2_behavior << ")\n";
  }

  try {
    auto t1 = connect_endpoint(u1_endpoint);
    auto t2 = connect_endpoint(u2_endpoint);

    Rng rng(seed);
    auto random_point = [&]() {
      for (;;) {
        try {
          Point p = lift(rng.below(pp.field().value()), pp.curve);
          if (!p.is_infinity()) return p;
        } catch (const NonResidue&) {
        }
      }
    };
    Point a = random_point();
    Point b = random_point();
    std::cout << "A = (" << a.x().residue() << ", " << a.y().residue() << ")\n";
    std::cout << "B = (" << b.x().residue() << ", " << b.y().residue() << ")\n";

    OutsourcingClient client(pp, *t1, *t2, rng.u64());
    BpsmRunStats stats;
    GtElement got = client.delegate_pairing(a, b, &stats);
    std::cout << "six scalar-mult sessions verified (" << stats.sm_attempts
              << " attempts, " << stats.sm_total_ms << " ms)\n";
    std::cout << "four pairing queries answered (" << stats.pair_queries_ms << " ms)\n";
    std::cout << "product-and-power check passed: 1 exponentiation, 2 multiplications\n";
    std::cout << "recovered e(A,B) = (" << got.value().c0().residue() << ", "
              << got.value().c1().residue() << ")\n";
    GtElement want = tate_pairing(a, b, pp);
    if (got == want) {
      std::cout << "MATCH against local pairing\n";
      return kExitOk;
    }
    std::cout << "MISMATCH against local pairing\n";
    return kExitVerification;
  } catch (const VerificationFailed& e) {
    std::cout << "REJECTED at " << stage_name(e.stage()) << " stage\n";
    return kExitVerification;
  } catch (const TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitTransport;
  }
}

int cmd_serve(const std::string& params_arg, const std::string& endpoint,
              const std::string& behavior, std::uint64_t seed, double max_seconds) {
  PairingParams pp = load_or_preset(params_arg, 9001);
  BehaviorConfig cfg{behavior_from_string(behavior), seed, 2, BehaviorConfig::Scope::all,
                     std::nullopt};
  try {
    auto server = serve(endpoint, pp, cfg);
    std::cout << "serving " << pp.name << " at " << server->endpoint() << " ("
              << behavior << ")" << std::endl;
    static std::atomic<bool> stop{false};
    std::signal(SIGINT, [](int) { stop.store(true); });
    std::signal(SIGTERM, [](int) { stop.store(true); });
    auto started = std::chrono::steady_clock::now();
    while (!stop.load()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
      if (max_seconds > 0 &&
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() >
              max_seconds)
        break;
    }
    return kExitOk;
  } catch (const TransportError& e) {
    std::cerr << "serve: " << e.what() << "\n";
    return kExitTransport;
  }
}

int cmd_bench(const std::vector<std::string>& params_args, int trials, std::uint64_t seed,
              const std::string& out) {
  std::vector<BenchRow> rows;
  for (const std::string& arg : params_args) {
    PairingParams pp = load_or_preset(arg, 9001);
    std::cerr << "bench " << pp.name << ": " << trials << " trials...\n";
    auto preset_rows = run_bench(pp, trials, seed);
    rows.insert(rows.end(), preset_rows.begin(), preset_rows.end());
  }
  std::string csv = bench_csv(rows);
  if (out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(out);
    f << csv;
    std::cout << "wrote " << out << " (" << rows.size() << " rows)\n";
  }
  return kExitOk;
}

int cmd_scenarios(const std::string& suite, const std::string& params_arg, int trials,
                  std::uint64_t seed, const std::string& transport_name) {
  PairingParams pp = load_or_preset(params_arg, 9001);
  TransportKind transport =
      transport_name == "tcp" ? TransportKind::tcp : TransportKind::in_process;

  std::vector<ScenarioConfig> configs;
  auto add = [&](const std::string& name, ProtocolKind proto, BehaviorKind u1, BehaviorKind u2,
                 BehaviorConfig::Scope scope, int n) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.protocol = proto;
    cfg.u1 = BehaviorConfig{u1, seed ^ 0xAAAA, 2, scope, std::nullopt};
    cfg.u2 = BehaviorConfig{u2, seed ^ 0xBBBB, 2, scope, std::nullopt};
    cfg.trials = n;
    cfg.seed = seed;
    cfg.transport = transport;
    configs.push_back(std::move(cfg));
  };

  const std::vector<BehaviorKind> adversaries = {
      BehaviorKind::random_output, BehaviorKind::bit_flip, BehaviorKind::identity_output,
      BehaviorKind::scale_output, BehaviorKind::lazy};

  if (suite == "smoke") {
    add("sm-honest", ProtocolKind::scalar_mult, BehaviorKind::honest, BehaviorKind::honest,
        BehaviorConfig::Scope::all, trials);
    add("bpsm-honest", ProtocolKind::pairing_delegation, BehaviorKind::honest,
        BehaviorKind::honest, BehaviorConfig::Scope::all, std::max(1, trials / 2));
  } else if (suite == "one-malicious") {
    for (BehaviorKind adv : adversaries) {
      std::string tag = behavior_to_string(adv);
      add("sm-u1-" + tag, ProtocolKind::scalar_mult, adv, BehaviorKind::honest,
          BehaviorConfig::Scope::all, trials);
      add("sm-u2-" + tag, ProtocolKind::scalar_mult, BehaviorKind::honest, adv,
          BehaviorConfig::Scope::all, trials);
      add("bpsm-u1-" + tag, ProtocolKind::pairing_delegation, adv, BehaviorKind::honest,
          BehaviorConfig::Scope::pair_only, std::max(1, trials / 2));
      add("bpsm-u2-" + tag, ProtocolKind::pairing_delegation, BehaviorKind::honest, adv,
          BehaviorConfig::Scope::pair_only, std::max(1, trials / 2));
    }
  } else {
    std::cerr << "scenarios: unknown suite '" << suite << "' (smoke | one-malicious)\n";
    return kExitUsage;
  }

  int total_wrong = 0;
  for (const ScenarioConfig& cfg : configs) {
    ScenarioReport report = run_scenario(cfg, pp);
    bool bad = report.accepted_wrong > 0 ||
               (cfg.u1.kind == BehaviorKind::honest && cfg.u2.kind == BehaviorKind::honest &&
                report.accepted_correct != report.trials);
    std::cout << (bad ? "FAIL " : "pass ") << cfg.name << ": correct=" << report.accepted_correct
              << " rejected=" << report.rejected << " wrong=" << report.accepted_wrong << " ("
              << report.total_wall_ms << " ms)\n";
    total_wrong += report.accepted_wrong;
    if (cfg.u1.kind == BehaviorKind::honest && cfg.u2.kind == BehaviorKind::honest &&
        report.accepted_correct != report.trials)
      ++total_wrong;
  }
  if (total_wrong > 0) {
    std::cout << "suite FAILED\n";
    return kExitVerification;
  }
  std::cout << "suite passed: no accepted-wrong outcomes\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-server verifiable delegation of elliptic-curve pairings"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;

  auto* gen = app.add_subcommand("gen", "generate a curve parameter file");
  unsigned gen_bits = 64;
  std::string gen_out;
  gen->add_option("--bits", gen_bits, "field size: 32..64 (toys), 160, 256, 512");
  auto* gen_seed_opt = gen->add_option("--seed", seed, "deterministic search seed");
  gen->add_option("--out", gen_out, "output file (stdout when omitted)");

  auto* demo = app.add_subcommand("demo", "run one delegated pairing with a transcript");
  std::string demo_params = "toy-64", demo_transport = "inproc";
  std::string demo_u1 = "honest", demo_u2 = "honest", demo_u1_ep, demo_u2_ep;
  demo->add_option("--params", demo_params, "preset name or parameter file");
  demo->add_option("--transport", demo_transport, "inproc | tcp")
      ->check(CLI::IsMember({"inproc", "tcp"}));
  demo->add_option("--u1", demo_u1, "U1 behavior (honest|random|bitflip|identity|scale|lazy)");
  demo->add_option("--u2", demo_u2, "U2 behavior");
  std::string demo_scope = "all";
  demo->add_option("--scope", demo_scope, "which queries a non-honest behavior touches")
      ->check(CLI::IsMember({"all", "sm", "pair"}));
  demo->add_option("--u1-endpoint", demo_u1_ep, "connect to an external U1 instead of hosting");
  demo->add_option("--u2-endpoint", demo_u2_ep, "connect to an external U2 instead of hosting");
  auto* demo_seed_opt = demo->add_option("--seed", seed, "input/blinding seed");

  auto* srv = app.add_subcommand("serve", "host one server until interrupted");
  std::string srv_params = "toy-64", srv_endpoint = "tcp:127.0.0.1:0", srv_behavior = "honest";
  double srv_max_seconds = 0;
  srv->add_option("--params", srv_params, "preset name or parameter file");
  srv->add_option("--endpoint", srv_endpoint, "tcp:host:port or inproc:key");
  srv->add_option("--behavior", srv_behavior, "server behavior");
  auto* srv_seed_opt = srv->add_option("--seed", seed, "behavior randomness seed");
  srv->add_option("--max-seconds", srv_max_seconds, "exit after this long (0 = run forever)");

  auto* bench = app.add_subcommand("bench", "time the delegation phases, emit CSV");
  std::vector<std::string> bench_params = {"toy-64"};
  int bench_trials = 500;
  std::string bench_out;
  bench->add_option("--params", bench_params, "preset names or parameter files")
      ->expected(-1);
  bench->add_option("--trials", bench_trials, "rounds to average over");
  auto* bench_seed_opt = bench->add_option("--seed", seed, "input seed");
  bench->add_option("--out", bench_out, "CSV output file (stdout when omitted)");

  auto* scen = app.add_subcommand("scenarios", "run a delegation scenario suite");
  std::string scen_suite = "smoke", scen_params = "toy-32", scen_transport = "inproc";
  int scen_trials = 100;
  scen->add_option("--suite", scen_suite, "smoke | one-malicious");
  scen->add_option("--params", scen_params, "preset name or parameter file");
  scen->add_option("--trials", scen_trials, "trials per scenario");
  scen->add_option("--transport", scen_transport, "inproc | tcp")
      ->check(CLI::IsMember({"inproc", "tcp"}));
  auto* scen_seed_opt = scen->add_option("--seed", seed, "scenario seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_bits, seed_or_env(gen_seed_opt, seed), gen_out);
    if (demo->parsed())
      return cmd_demo(demo_params, seed_or_env(demo_seed_opt, seed), demo_transport, demo_u1,
                      demo_u2, demo_scope, demo_u1_ep, demo_u2_ep);
    if (srv->parsed())
      return cmd_serve(srv_params, srv_endpoint, srv_behavior, seed_or_env(srv_seed_opt, seed),
                       srv_max_seconds);
    if (bench->parsed())
      return cmd_bench(bench_params, bench_trials, seed_or_env(bench_seed_opt, seed), bench_out);
    if (scen->parsed())
      return cmd_scenarios(scen_suite, scen_params, scen_trials,
                           seed_or_env(scen_seed_opt, seed), scen_transport);
  } catch (const ParamSearchExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const TransportError& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitTransport;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
