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

#include "pairsource/params_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace pairsource {

const std::vector<PresetSpec>& builtin_presets() {
  static const std::vector<PresetSpec> presets = {
      {"toy-32", 32, 20}, {"toy-64", 64, 40},   {"p160", 160, 152},
      {"p256", 256, 248}, {"p512", 512, 504},
  };
  return presets;
}

unsigned default_r_bits(unsigned p_bits) {
  for (const PresetSpec& p : builtin_presets())
    if (p.p_bits == p_bits) return p.r_bits;
  if (p_bits <= 64) return std::max(16u, p_bits * 5 / 8);
  return p_bits - 8;
}

PairingParams make_preset(const std::string& name, std::uint64_t seed) {
  for (const PresetSpec& p : builtin_presets()) {
    if (p.name == name) return generate_pairing_params(p.p_bits, p.r_bits, seed, p.name);
  }
  throw Error("unknown preset: " + name);
}

namespace {

mpz_class parse_mpz(const std::string& s) {
  if (s.empty()) throw Error("empty integer field");
  return mpz_class(s, 10);
}

}  // namespace

nlohmann::ordered_json params_to_json(const PairingParams& pp) {
  nlohmann::ordered_json j;
  j["name"] = pp.name;
  j["p_bits"] = pp.field().bit_length();
  j["r_bits"] = mpz_sizeinbase(pp.r.get_mpz_t(), 2);
  j["p"] = pp.field().value().get_str();
  j["r"] = pp.r.get_str();
  j["a"] = pp.curve.a.residue().get_str();
  j["b"] = pp.curve.b.residue().get_str();
  j["cofactor"] = pp.curve.cofactor->get_str();
  j["generator"] = {{"x", pp.generator().x().residue().get_str()},
                    {"y", pp.generator().y().residue().get_str()}};
  return j;
}

PairingParams params_from_json(const nlohmann::ordered_json& j) {
  PairingParams pp;
  pp.name = j.at("name").get<std::string>();
  mpz_class p = parse_mpz(j.at("p").get<std::string>());
  mpz_class r = parse_mpz(j.at("r").get<std::string>());
  mpz_class a = parse_mpz(j.at("a").get<std::string>());
  mpz_class b = parse_mpz(j.at("b").get<std::string>());
  mpz_class h = parse_mpz(j.at("cofactor").get<std::string>());
  mpz_class gx = parse_mpz(j.at("generator").at("x").get<std::string>());
  mpz_class gy = parse_mpz(j.at("generator").at("y").get<std::string>());
  Modulus field = Modulus::prime(p);  // validating constructor
  CurveParams curve = CurveParams::prime_field(a, b, field, r, h);
  curve.generator = Point(RingElement(gx, field), RingElement(gy, field));
  pp.curve = std::move(curve);
  pp.r = std::move(r);
  pp.final_exp = (p * p - 1) / pp.r;
  pp.validate();
  return pp;
}

void save_params(const std::string& path, const PairingParams& pp) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << params_to_json(pp).dump(2) << "\n";
}

PairingParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(in);
  return params_from_json(j);
}

}  // namespace pairsource
