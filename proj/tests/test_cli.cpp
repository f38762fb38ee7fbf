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

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "pairsource/params_io.hpp"

#ifndef PAIRSOURCE_CLI_PATH
#define PAIRSOURCE_CLI_PATH "pairsource"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(PAIRSOURCE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[512];
  while (fgets(buf, sizeof(buf), pipe)) r.output += buf;
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("gen is deterministic and emits loadable parameters") {
  std::string out1 = "/tmp/pairsource_test_params1.json";
  std::string out2 = "/tmp/pairsource_test_params2.json";
  RunResult a = run_cli("gen --bits 40 --seed 7 --out " + out1);
  RunResult b = run_cli("gen --bits 40 --seed 7 --out " + out2);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(slurp(out1) == slurp(out2));

  pairsource::PairingParams pp = pairsource::load_params(out1);
  pp.validate();
  CHECK(pp.field().bit_length() == 40);
  CHECK((pp.field().value() + 1) % pp.r == 0);

  RunResult different = run_cli("gen --bits 40 --seed 8 --out " + out2);
  CHECK(different.exit_code == 0);
  CHECK(slurp(out1) != slurp(out2));

  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("gen rejects unsupported sizes") {
  RunResult r = run_cli("gen --bits 100");
  CHECK(r.exit_code == 4);
}

TEST_CASE("the seed falls back to the environment") {
  std::string out1 = "/tmp/pairsource_env_seed1.json";
  std::string out2 = "/tmp/pairsource_env_seed2.json";
  std::string base = std::string("PAIRSOURCE_SEED=9 ") + PAIRSOURCE_CLI_PATH;
  {
    std::string cmd = base + " gen --bits 36 --out " + out1 + " > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
  }
  {
    std::string cmd = std::string(PAIRSOURCE_CLI_PATH) + " gen --bits 36 --seed 9 --out " + out2 +
                      " > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
  }
  CHECK(slurp(out1) == slurp(out2));
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("demo runs and reports MATCH for honest servers") {
  RunResult r = run_cli("demo --params toy-32 --seed 5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("MATCH") != std::string::npos);
}

TEST_CASE("demo over TCP") {
  RunResult r = run_cli("demo --params toy-32 --seed 5 --transport tcp");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("MATCH") != std::string::npos);
}

TEST_CASE("demo rejects a tampering server with exit code 2") {
  RunResult r = run_cli("demo --params toy-32 --seed 5 --u2 bitflip --scope pair");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("REJECTED at pairing stage") != std::string::npos);

  RunResult sm = run_cli("demo --params toy-32 --seed 5 --u1 random");
  CHECK(sm.exit_code == 2);
  CHECK(sm.output.find("REJECTED at scalar-mult stage") != std::string::npos);
}

TEST_CASE("demo reports transport failures with exit code 3") {
  RunResult r = run_cli("demo --params toy-32 --u1-endpoint tcp:127.0.0.1:1");
  CHECK(r.exit_code == 3);
}

TEST_CASE("bench emits one CSV row per curve and phase") {
  RunResult r = run_cli("bench --params toy-32 --trials 3 --seed 2");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  int rows = 0;
  bool saw_header = false, saw_client_total = false, saw_local = false;
  while (std::getline(lines, line)) {
    if (line.rfind("curve,phase,", 0) == 0) {
      saw_header = true;
      continue;
    }
    if (line.rfind("toy-32,", 0) == 0) {
      ++rows;
      saw_client_total |= line.find(",client_total,") != std::string::npos;
      saw_local |= line.find(",local_pairing,") != std::string::npos;
    }
  }
  CHECK(saw_header);
  CHECK(rows == 7);
  CHECK(saw_client_total);
  CHECK(saw_local);
}

TEST_CASE("scenario suites pass and flag usage errors") {
  RunResult smoke = run_cli("scenarios --suite smoke --params toy-32 --trials 10 --seed 3");
  CHECK(smoke.exit_code == 0);
  CHECK(smoke.output.find("suite passed") != std::string::npos);

  RunResult sweep =
      run_cli("scenarios --suite one-malicious --params toy-32 --trials 6 --seed 3");
  CHECK(sweep.exit_code == 0);
  CHECK(sweep.output.find("suite passed") != std::string::npos);

  RunResult bogus = run_cli("scenarios --suite nope");
  CHECK(bogus.exit_code == 4);

  RunResult usage = run_cli("frobnicate");
  CHECK(usage.exit_code == 4);
}

TEST_CASE("corrupted parameter files fail validation on load") {
  std::string path = "/tmp/pairsource_corrupt.json";
  RunResult gen = run_cli("gen --bits 34 --seed 4 --out " + path);
  REQUIRE(gen.exit_code == 0);
  std::string text = slurp(path);
  auto pos = text.find("\"cofactor\"");
  REQUIRE(pos != std::string::npos);
  text.replace(text.find(": \"", pos) + 3, 1, "9");  // clobber the cofactor
  {
    std::ofstream out(path);
    out << text;
  }
  CHECK_THROWS_AS(pairsource::load_params(path), pairsource::Error);
  std::remove(path.c_str());
}
