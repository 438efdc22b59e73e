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

#ifndef MPCDFG_NETWORK_SIM_H_
#define MPCDFG_NETWORK_SIM_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpcdfg/ring_sharing.h"

namespace mpcdfg {

// Accounting bucket for traffic. `kSetup` carries the plaintext metadata
// agreement, `kInput` the upload of input shares.
enum class Phase : int { kSetup = 0, kInput, kSort, kDfg, kQuery };
inline constexpr int kNumPhases = 5;
inline constexpr std::array<Phase, kNumPhases> kAllPhases = {
    Phase::kSetup, Phase::kInput, Phase::kSort, Phase::kDfg, Phase::kQuery};

std::string_view PhaseName(Phase phase);

using Message = std::vector<std::uint8_t>;
// Indexed [sender][receiver] on the way in and [receiver][sender] on the way
// out.
using Outbox = std::array<std::array<Message, kNumParties>, kNumParties>;
using Inbox = Outbox;

struct TranscriptEntry {
  std::uint64_t round;
  int sender;
  int receiver;
  std::uint64_t bytes;
  Phase phase;
  std::optional<Message> payload;

  // Compares the observable shape (everything but the payload).
  bool SameShape(const TranscriptEntry& other) const {
    return round == other.round && sender == other.sender &&
           receiver == other.receiver && bytes == other.bytes &&
           phase == other.phase;
  }
};

using Transcript = std::vector<TranscriptEntry>;

struct TrafficLedger {
  // bytes[phase][sender][receiver]
  std::array<std::array<std::array<std::uint64_t, kNumParties>, kNumParties>,
             kNumPhases>
      bytes{};
  std::array<std::uint64_t, kNumPhases> rounds{};

  std::uint64_t round_count() const;
  std::uint64_t total_bytes() const;
  std::uint64_t phase_bytes(Phase phase) const;
  std::uint64_t phase_rounds(Phase phase) const {
    return rounds[static_cast<int>(phase)];
  }
  std::uint64_t bytes_sent(PartyId party) const;
  std::uint64_t bytes_received(PartyId party) const;
  std::uint64_t phase_bytes_sent(Phase phase, PartyId party) const;

  // Per-field difference `*this - earlier`, for measuring one operation.
  TrafficLedger Since(const TrafficLedger& earlier) const;

  nlohmann::json ToJson() const;
  // Columns: phase,pair,bytes,rounds; one row per phase and ordered pair.
  std::string ToCsv() const;

  bool operator==(const TrafficLedger&) const = default;
};

// Synchronous three-party network. Every call to Exchange is one round: all
// messages are delivered together and the ledger is updated inside the
// barrier.
class Network {
 public:
  explicit Network(bool retain_payloads = false)
      : retain_payloads_(retain_payloads) {}

  Inbox Exchange(Outbox outbox);

  TrafficLedger SnapshotLedger() const { return ledger_; }
  const Transcript& transcript() const { return transcript_; }

  Phase phase() const { return phase_; }
  void set_phase(Phase phase) { phase_ = phase; }

 private:
  bool retain_payloads_;
  Phase phase_ = Phase::kSetup;
  TrafficLedger ledger_;
  Transcript transcript_;
};

// Attributes traffic to `phase` for the lifetime of the guard.
class ScopedPhase {
 public:
  ScopedPhase(Network& network, Phase phase)
      : network_(network), saved_(network.phase()) {
    network_.set_phase(phase);
  }
  ~ScopedPhase() { network_.set_phase(saved_); }
  ScopedPhase(const ScopedPhase&) = delete;
  ScopedPhase& operator=(const ScopedPhase&) = delete;

 private:
  Network& network_;
  Phase saved_;
};

// Serialization of ring elements into little-endian message bytes.
void AppendWords(Message& message, std::span<const std::uint64_t> words);
std::vector<std::uint64_t> ReadWords(const Message& message);

}  // namespace mpcdfg

#endif  // MPCDFG_NETWORK_SIM_H_
