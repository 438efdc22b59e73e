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

#include "mpcdfg/runtime.h"

#include <string>

namespace mpcdfg {
namespace {

std::array<PartyRandomness, kNumParties> SetupCorrelatedRandomness(
    std::uint64_t seed) {
  std::array<Prg, kNumParties> keys = {
      Prg::FromSeed(seed, "pair-key-0"), Prg::FromSeed(seed, "pair-key-1"),
      Prg::FromSeed(seed, "pair-key-2")};
  return {PartyRandomness(keys[0], keys[1]), PartyRandomness(keys[1], keys[2]),
          PartyRandomness(keys[2], keys[0])};
}

}  // namespace

void PartyRandomness::ZeroShareArith(std::span<RingElem> out) {
  own_.Fill(out);
  scratch_.resize(out.size());
  next_.Fill(scratch_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] -= scratch_[k];
}

void PartyRandomness::ZeroShareXor(std::span<std::uint64_t> out) {
  own_.Fill(out);
  scratch_.resize(out.size());
  next_.Fill(scratch_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] ^= scratch_[k];
}

Runtime::Runtime(std::uint64_t seed, bool retain_payloads)
    : network_(retain_payloads),
      randomness_(SetupCorrelatedRandomness(seed)),
      input_randomness_{Prg::FromSeed(seed, "input-0"),
                        Prg::FromSeed(seed, "input-1"),
                        Prg::FromSeed(seed, "input-2")} {}

std::vector<RingElem> Runtime::Open(const SharedVector& x) {
  const std::size_t n = x.size();
  Outbox outbox;
  // Party i is missing s_{i-1}; party i-1 holds it as its first component.
  for (PartyId id : kAllParties) {
    AppendWords(outbox[id.index()][id.next().index()], x.party(id).first);
  }
  Inbox inbox = network_.Exchange(std::move(outbox));
  std::array<std::vector<RingElem>, kNumParties> opened;
  for (PartyId id : kAllParties) {
    const auto& mine = x.party(id);
    std::vector<RingElem> missing =
        n == 0 ? std::vector<RingElem>{}
               : ReadWords(inbox[id.index()][id.prev().index()]);
    auto& out = opened[id.index()];
    out.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      out[k] = mine.first[k] + mine.second[k] + missing[k];
    }
  }
  if (opened[0] != opened[1] || opened[1] != opened[2]) {
    throw IntegrityError("parties opened different values");
  }
  reveal_count_ += n;
  testing_hooks::RecordReconstructions(n);
  return opened[0];
}

std::vector<std::vector<SharedVector>> Runtime::ShareInputs(
    std::span<const InputBatch> batches) {
  // Per batch and column: the three summands, computed by the owner.
  std::vector<std::vector<std::array<std::vector<RingElem>, kNumParties>>>
      summands(batches.size());
  std::array<bool, kNumParties> seen{};
  for (const InputBatch& batch : batches) {
    if (seen[batch.owner.index()]) {
      throw ShapeError("at most one input batch per owner and round");
    }
    seen[batch.owner.index()] = true;
  }
  Outbox outbox;
  for (std::size_t b = 0; b < batches.size(); ++b) {
    const InputBatch& batch = batches[b];
    Prg& prg = input_randomness_[batch.owner.index()];
    for (const auto& column : batch.columns) {
      std::array<std::vector<RingElem>, kNumParties> s;
      s[0].resize(column.size());
      s[1].resize(column.size());
      prg.Fill(s[0]);
      prg.Fill(s[1]);
      s[2].resize(column.size());
      for (std::size_t k = 0; k < column.size(); ++k) {
        s[2][k] = column[k] - s[0][k] - s[1][k];
      }
      for (PartyId to : kAllParties) {
        if (to == batch.owner) continue;
        Message& msg = outbox[batch.owner.index()][to.index()];
        AppendWords(msg, s[to.index()]);
        AppendWords(msg, s[to.next().index()]);
      }
      summands[b].push_back(std::move(s));
    }
  }
  // The receivers decode their pairs from the inbox; the owner keeps its own.
  Inbox inbox = network_.Exchange(std::move(outbox));
  std::vector<std::vector<SharedVector>> out(batches.size());
  for (std::size_t b = 0; b < batches.size(); ++b) {
    const InputBatch& batch = batches[b];
    std::array<std::vector<RingElem>, kNumParties> received;
    for (PartyId to : kAllParties) {
      if (to == batch.owner) continue;
      received[to.index()] = ReadWords(inbox[to.index()][batch.owner.index()]);
    }
    std::array<std::size_t, kNumParties> cursor{};
    for (std::size_t c = 0; c < batch.columns.size(); ++c) {
      const std::size_t n = batch.columns[c].size();
      std::array<PartyShares, kNumParties> parts;
      for (PartyId id : kAllParties) {
        auto& p = parts[id.index()];
        if (id == batch.owner) {
          p.first = summands[b][c][id.index()];
          p.second = summands[b][c][id.next().index()];
          continue;
        }
        auto& words = received[id.index()];
        std::size_t& at = cursor[id.index()];
        p.first.assign(words.begin() + at, words.begin() + at + n);
        p.second.assign(words.begin() + at + n, words.begin() + at + 2 * n);
        at += 2 * n;
      }
      out[b].emplace_back(std::move(parts));
    }
  }
  return out;
}

}  // namespace mpcdfg
