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

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace pairsource {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two ring elements from different moduli were combined.
class ModulusMismatch : public Error {
 public:
  using Error::Error;
};

/// Inversion failed: gcd(value, modulus) != 1. Over Z_N this aborts the
/// session (the gcd is a nontrivial factor of N; the caller must discard
/// the run and re-randomize).
class NotInvertible : public Error {
 public:
  explicit NotInvertible(mpz_class gcd)
      : Error("element not invertible, gcd = " + gcd.get_str()), gcd_(std::move(gcd)) {}
  const mpz_class& gcd() const { return gcd_; }

 private:
  mpz_class gcd_;
};

/// No square root exists for the requested x-coordinate.
class NonResidue : public Error {
 public:
  using Error::Error;
};

/// A Miller line function evaluated to zero (possible only for inputs
/// outside the prime-order subgroup).
class ZeroEvaluation : public Error {
 public:
  using Error::Error;
};

/// The server could not complete the requested computation (e.g. a
/// non-invertible denominator over Z_N). The client retries with fresh
/// randomness.
class ComputationFailed : public Error {
 public:
  using Error::Error;
};

enum class ProtocolStage { scalar_mult, pairing };

inline const char* stage_name(ProtocolStage s) {
  return s == ProtocolStage::scalar_mult ? "scalar-mult" : "pairing";
}

class VerificationFailed : public Error {
 public:
  explicit VerificationFailed(ProtocolStage stage)
      : Error(std::string("verification failed at ") + stage_name(stage) + " stage"),
        stage_(stage) {}
  ProtocolStage stage() const { return stage_; }

 private:
  ProtocolStage stage_;
};

class TransportError : public Error {
 public:
  using Error::Error;
};

/// Parameter search exceeded its attempt budget.
class ParamSearchExhausted : public Error {
 public:
  using Error::Error;
};

// Escrow state machine errors.
class WrongPhase : public Error {
 public:
  using Error::Error;
};
class WrongParty : public Error {
 public:
  using Error::Error;
};
class InsufficientFunds : public Error {
 public:
  using Error::Error;
};

}  // namespace pairsource
