// Copyright 2026 The mpcdfg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MPCDFG_RUNTIME_H_
#define MPCDFG_RUNTIME_H_

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mpcdfg/network_sim.h"
#include "mpcdfg/prg.h"
#include "mpcdfg/ring_sharing.h"

namespace mpcdfg {

// Correlated randomness of one computing party. Party i holds key k_i (also
// held by party i-1) and key k_{i+1} (also held by party i+1); the streams
// advance in lockstep because every protocol draws from both symmetrically.
class PartyRandomness {
 public:
  PartyRandomness(Prg own, Prg next)
      : own_(std::move(own)), next_(std::move(next)) {}

  // alpha_i = F(k_i) - F(k_{i+1}); the three summands add to zero.
  void ZeroShareArith(std::span<RingElem> out);
  // alpha_i = F(k_i) ^ F(k_{i+1}); the three summands XOR to zero.
  void ZeroShareXor(std::span<std::uint64_t> out);

 private:
  Prg own_;
  Prg next_;
  std::vector<std::uint64_t> scratch_;
};

// Plaintext columns uploaded by one input party.
struct InputBatch {
  PartyId owner;
  std::vector<std::vector<RingElem>> columns;
};

// Execution context shared by all protocols: the simulated network plus the
// per-party randomness set up from one master seed. Each party-local step in
// the protocols reads only that party's view, its randomness, and its inbox.
class Runtime {
 public:
  explicit Runtime(std::uint64_t seed, bool retain_payloads = false);

  Network& network() { return network_; }
  const Network& network() const { return network_; }
  PartyRandomness& randomness(PartyId id) { return randomness_[id.index()]; }

  // Values opened to the parties by Open() over the runtime's lifetime.
  std::uint64_t reveal_count() const { return reveal_count_; }

  // Turns additive summands z_i (party i knows only z_i) into a replicated
  // sharing: party i sends z_i to party i-1. One round, 8 bytes per lane per
  // party.
  template <typename Domain>
  ReplicatedVector<Domain> Reshare(
      std::array<std::vector<std::uint64_t>, kNumParties> summands);

  // Opens every lane to all three parties. One round, 8 bytes per lane per
  // party.
  std::vector<RingElem> Open(const SharedVector& x);

  // Secret-shares each batch's columns from its owner to the other two
  // parties. All batches travel in a single round; the result is indexed
  // [batch][column].
  std::vector<std::vector<SharedVector>> ShareInputs(
      std::span<const InputBatch> batches);

 private:
  Network network_;
  std::array<PartyRandomness, kNumParties> randomness_;
  std::array<Prg, kNumParties> input_randomness_;
  std::uint64_t reveal_count_ = 0;
};

template <typename Domain>
ReplicatedVector<Domain> Runtime::Reshare(
    std::array<std::vector<std::uint64_t>, kNumParties> summands) {
  const std::size_t n = summands[0].size();
  Outbox outbox;
  for (PartyId id : kAllParties) {
    if (summands[id.index()].size() != n) {
      throw ShapeError("reshare summands disagree on length");
    }
    AppendWords(outbox[id.index()][id.prev().index()], summands[id.index()]);
  }
  Inbox inbox = network_.Exchange(std::move(outbox));
  std::array<PartyShares, kNumParties> parts;
  for (PartyId id : kAllParties) {
    auto& p = parts[id.index()];
    p.first = std::move(summands[id.index()]);
    p.second = inbox[id.index()][id.next().index()].empty()
                   ? std::vector<std::uint64_t>(n, 0)
                   : ReadWords(inbox[id.index()][id.next().index()]);
  }
  return ReplicatedVector<Domain>(std::move(parts));
}

}  // namespace mpcdfg

#endif  // MPCDFG_RUNTIME_H_
