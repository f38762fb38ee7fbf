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
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "pairsource/bpsm.hpp"

namespace pairsource {

using Amount = std::uint64_t;
using TaskId = std::uint64_t;
using PartyId = std::string;

/// Deterministic fair-payment machine. A task moves through
///   SMPosted -> SMClaimed -> SMReturned -> PairPosted -> PairClaimed ->
///   PairReturned -> SettledPaid | SettledRefunded
/// in order, except that SettledRefunded is also reachable from SMReturned
/// (client abort after a failed off-escrow scalar-mult check). The escrow
/// holds the fee plus every claim deposit; settlement pays them to the
/// server iff the stored pairing check passes, otherwise everything goes to
/// the client. The sum of all balances is invariant across every transition.
class Escrow {
 public:
  enum class Phase {
    sm_posted,
    sm_claimed,
    sm_returned,
    pair_posted,
    pair_claimed,
    pair_returned,
    settled_paid,
    settled_refunded,
  };
  enum class Settlement { paid, refunded };

  struct PairCheckData {
    GtElement h1, l1, h2, l2;
  };

  struct Task {
    TaskId id = 0;
    Phase phase = Phase::sm_posted;
    PartyId client;
    PartyId server;  // the claimant
    Amount fee = 0;
    Amount deposits_held = 0;
    std::vector<std::uint8_t> sm_queries, sm_responses;
    std::vector<std::uint8_t> pair_queries;
    mpz_class check_exponent;
    bool have_check = false;
    PairCheckData check;
  };

  explicit Escrow(std::map<PartyId, Amount> initial_balances);

  /// Client posts the scalar-mult stage and escrows the fee.
  TaskId upload_sm(const PartyId& client, std::vector<std::uint8_t> queries, Amount fee);
  /// Server claims the scalar-mult stage against a deposit; payload returned.
  std::vector<std::uint8_t> get_sm(const PartyId& server, TaskId id, Amount deposit);
  /// Claimant returns the scalar-mult results.
  void submit_sm_result(const PartyId& server, TaskId id, std::vector<std::uint8_t> responses);
  /// Client, having verified the scalar-mult stage off-escrow, posts the
  /// pairing stage together with the check exponent used at settlement.
  void upload_task(const PartyId& client, TaskId id, std::vector<std::uint8_t> queries,
                   const mpz_class& check_exponent);
  std::vector<std::uint8_t> get_task(const PartyId& server, TaskId id, Amount deposit);
  /// Claimant returns the four pairing values.
  void submit_result(const PartyId& server, TaskId id, const PairCheckData& responses);
  /// Runs the stored check; pays fee + deposits to the server on success,
  /// returns them to the client on failure.
  Settlement settle(TaskId id);
  /// Client abort from SMReturned: fee and held deposits go back to the client.
  void refund(const PartyId& client, TaskId id);

  Amount balance(const PartyId& party) const;
  Amount total() const;
  const Task& task(TaskId id) const;
  /// One JSON object per line: {seq, op, task, party, amounts, phase_before, phase_after}.
  std::string log_jsonl() const;

  static const PartyId kEscrowAccount;

 private:
  Task& get_task_ref(TaskId id);
  void move_funds(const PartyId& from, const PartyId& to, Amount amount);
  void log_transition(const std::string& op, TaskId id, const PartyId& party, Amount amount,
                      Phase before, Phase after);

  mutable std::mutex mu_;
  std::map<PartyId, Amount> balances_;
  std::map<TaskId, Task> tasks_;
  TaskId next_id_ = 1;
  std::uint64_t seq_ = 0;
  std::vector<std::string> log_;
};

const char* phase_name(Escrow::Phase p);

}  // namespace pairsource
