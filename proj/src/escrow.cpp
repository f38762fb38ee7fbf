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

#include "pairsource/escrow.hpp"

#include <nlohmann/json.hpp>

namespace pairsource {

const PartyId Escrow::kEscrowAccount = "escrow";

const char* phase_name(Escrow::Phase p) {
  switch (p) {
    case Escrow::Phase::sm_posted: return "SMPosted";
    case Escrow::Phase::sm_claimed: return "SMClaimed";
    case Escrow::Phase::sm_returned: return "SMReturned";
    case Escrow::Phase::pair_posted: return "PairPosted";
    case Escrow::Phase::pair_claimed: return "PairClaimed";
    case Escrow::Phase::pair_returned: return "PairReturned";
    case Escrow::Phase::settled_paid: return "SettledPaid";
    case Escrow::Phase::settled_refunded: return "SettledRefunded";
  }
  return "?";
}

Escrow::Escrow(std::map<PartyId, Amount> initial_balances)
    : balances_(std::move(initial_balances)) {
  balances_.try_emplace(kEscrowAccount, 0);
}

Escrow::Task& Escrow::get_task_ref(TaskId id) {
  auto it = tasks_.find(id);
  if (it == tasks_.end()) throw WrongPhase("no such task");
  return it->second;
}

void Escrow::move_funds(const PartyId& from, const PartyId& to, Amount amount) {
  auto fit = balances_.find(from);
  if (fit == balances_.end() || fit->second < amount)
    throw InsufficientFunds(from + " cannot cover " + std::to_string(amount));
  fit->second -= amount;
  balances_[to] += amount;
}

void Escrow::log_transition(const std::string& op, TaskId id, const PartyId& party, Amount amount,
                            Phase before, Phase after) {
  nlohmann::ordered_json j;
  j["seq"] = seq_++;
  j["op"] = op;
  j["task"] = id;
  j["party"] = party;
  j["amounts"] = {{"moved", amount}, {"escrow", balances_[kEscrowAccount]}};
  j["phase_before"] = phase_name(before);
  j["phase_after"] = phase_name(after);
  log_.push_back(j.dump());
}

TaskId Escrow::upload_sm(const PartyId& client, std::vector<std::uint8_t> queries, Amount fee) {
  std::lock_guard<std::mutex> lock(mu_);
  if (fee == 0) throw Error("fee must be positive");
  move_funds(client, kEscrowAccount, fee);
  Task t;
  t.id = next_id_++;
  t.client = client;
  t.fee = fee;
  t.sm_queries = std::move(queries);
  TaskId id = t.id;
  tasks_.emplace(id, std::move(t));
  log_transition("upload_sm", id, client, fee, Phase::sm_posted, Phase::sm_posted);
  return id;
}

std::vector<std::uint8_t> Escrow::get_sm(const PartyId& server, TaskId id, Amount deposit) {
  std::lock_guard<std::mutex> lock(mu_);
  Task& t = get_task_ref(id);
  if (t.phase != Phase::sm_posted) throw WrongPhase("get_sm needs SMPosted");
  if (deposit == 0) throw Error("deposit must be positive");
  move_funds(server, kEscrowAccount, deposit);
  Phase before = t.phase;
  t.phase = Phase::sm_claimed;
  t.server = server;
  t.deposits_held += deposit;
  log_transition("get_sm", id, server, deposit, before, t.phase);
  return t.sm_queries;
}

void Escrow::submit_sm_result(const PartyId& server, TaskId id,
                              std::vector<std::uint8_t> responses) {
  std::lock_guard<std::mutex> lock(mu_);
  Task& t = get_task_ref(id);
  if (t.phase != Phase::sm_claimed) throw WrongPhase("submit_sm_result needs SMClaimed");
  if (t.server != server) throw WrongParty("only the claimant may submit");
  Phase before = t.phase;
  t.phase = Phase::sm_returned;
  t.sm_responses = std::move(responses);
  log_transition("submit_sm_result", id, server, 0, before, t.phase);
}

void Escrow::upload_task(const PartyId& client, TaskId id, std::vector<std::uint8_t> queries,
                         const mpz_class& check_exponent) {
  std::lock_guard<std::mutex> lock(mu_);
  Task& t = get_task_ref(id);
  if (t.phase != Phase::sm_returned) throw WrongPhase("upload_task needs SMReturned");
  if (t.client != client) throw WrongParty("only the posting client may continue");
  Phase before = t.phase;
  t.phase = Phase::pair_posted;
  t.pair_queries = std::move(queries);
  t.check_exponent = check_exponent;
  log_transition("upload_task", id, client, 0, before, t.phase);
}

std::vector<std::uint8_t> Escrow::get_task(const PartyId& server, TaskId id, Amount deposit) {
  std::lock_guard<std::mutex> lock(mu_);
  Task& t = get_task_ref(id);
  if (t.phase != Phase::pair_posted) throw WrongPhase("get_task needs PairPosted");
  if (deposit == 0) throw Error("deposit must be positive");
  move_funds(server, kEscrowAccount, deposit);
  Phase before = t.phase;
  t.phase = Phase::pair_claimed;
  t.server = server;
  t.deposits_held += deposit;
  log_transition("get_task", id, server, deposit, before, t.phase);
  return t.pair_queries;
}

void Escrow::submit_result(const PartyId& server, TaskId id, const PairCheckData& responses) {
  std::lock_guard<std::mutex> lock(mu_);
  Task& t = get_task_ref(id);
  if (t.phase != Phase::pair_claimed) throw WrongPhase("submit_result needs PairClaimed");
  if (t.server != server) throw WrongParty("only the claimant may submit");
  Phase before = t.phase;
  t.phase = Phase::pair_returned;
  t.check = responses;
  t.have_check = true;
  log_transition("submit_result", id, server, 0, before, t.phase);
}

Escrow::Settlement Escrow::settle(TaskId id) {
  std::lock_guard<std::mutex> lock(mu_);
  Task& t = get_task_ref(id);
  if (t.phase != Phase::pair_returned) throw WrongPhase("settle needs PairReturned");
  if (!t.have_check) throw WrongPhase("no stored responses");
  BpsmCheck chk = bpsm_verify(t.check.h1, t.check.h2, t.check.l1, t.check.l2, t.check_exponent);
  Phase before = t.phase;
  Amount pot = t.fee + t.deposits_held;
  if (chk.ok) {
    move_funds(kEscrowAccount, t.server, pot);
    t.phase = Phase::settled_paid;
    t.deposits_held = 0;
    log_transition("settle", id, t.server, pot, before, t.phase);
    return Settlement::paid;
  }
  move_funds(kEscrowAccount, t.client, pot);
  t.phase = Phase::settled_refunded;
  t.deposits_held = 0;
  log_transition("settle", id, t.client, pot, before, t.phase);
  return Settlement::refunded;
}

void Escrow::refund(const PartyId& client, TaskId id) {
  std::lock_guard<std::mutex> lock(mu_);
  Task& t = get_task_ref(id);
  if (t.phase != Phase::sm_returned) throw WrongPhase("refund needs SMReturned");
  if (t.client != client) throw WrongParty("only the posting client may abort");
  Phase before = t.phase;
  Amount pot = t.fee + t.deposits_held;
  move_funds(kEscrowAccount, client, pot);
  t.phase = Phase::settled_refunded;
  t.deposits_held = 0;
  log_transition("refund", id, client, pot, before, t.phase);
}

Amount Escrow::balance(const PartyId& party) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = balances_.find(party);
  return it == balances_.end() ? 0 : it->second;
}

Amount Escrow::total() const {
  std::lock_guard<std::mutex> lock(mu_);
  Amount sum = 0;
  for (const auto& [_, v] : balances_) sum += v;
  return sum;
}

const Escrow::Task& Escrow::task(TaskId id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = tasks_.find(id);
  if (it == tasks_.end()) throw WrongPhase("no such task");
  return it->second;
}

std::string Escrow::log_jsonl() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::string out;
  for (const std::string& line : log_) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace pairsource
