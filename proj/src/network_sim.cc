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

#include "mpcdfg/network_sim.h"

#include <cstring>
#include <sstream>

namespace mpcdfg {

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kSetup:
      return "setup";
    case Phase::kInput:
      return "input";
    case Phase::kSort:
      return "sort";
    case Phase::kDfg:
      return "dfg";
    case Phase::kQuery:
      return "query";
  }
  return "unknown";
}

std::uint64_t TrafficLedger::round_count() const {
  std::uint64_t total = 0;
  for (auto r : rounds) total += r;
  return total;
}

std::uint64_t TrafficLedger::phase_bytes(Phase phase) const {
  std::uint64_t total = 0;
  for (const auto& row : bytes[static_cast<int>(phase)]) {
    for (auto b : row) total += b;
  }
  return total;
}

std::uint64_t TrafficLedger::total_bytes() const {
  std::uint64_t total = 0;
  for (Phase p : kAllPhases) total += phase_bytes(p);
  return total;
}

std::uint64_t TrafficLedger::phase_bytes_sent(Phase phase,
                                              PartyId party) const {
  std::uint64_t total = 0;
  for (auto b : bytes[static_cast<int>(phase)][party.index()]) total += b;
  return total;
}

std::uint64_t TrafficLedger::bytes_sent(PartyId party) const {
  std::uint64_t total = 0;
  for (Phase p : kAllPhases) total += phase_bytes_sent(p, party);
  return total;
}

std::uint64_t TrafficLedger::bytes_received(PartyId party) const {
  std::uint64_t total = 0;
  for (const auto& phase : bytes) {
    for (const auto& row : phase) total += row[party.index()];
  }
  return total;
}

TrafficLedger TrafficLedger::Since(const TrafficLedger& earlier) const {
  TrafficLedger out;
  for (int p = 0; p < kNumPhases; ++p) {
    out.rounds[p] = rounds[p] - earlier.rounds[p];
    for (int s = 0; s < kNumParties; ++s) {
      for (int r = 0; r < kNumParties; ++r) {
        out.bytes[p][s][r] = bytes[p][s][r] - earlier.bytes[p][s][r];
      }
    }
  }
  return out;
}

nlohmann::json TrafficLedger::ToJson() const {
  nlohmann::json phases = nlohmann::json::object();
  for (Phase phase : kAllPhases) {
    nlohmann::json pairs = nlohmann::json::object();
    for (int s = 0; s < kNumParties; ++s) {
      for (int r = 0; r < kNumParties; ++r) {
        if (s == r) continue;
        pairs[std::to_string(s) + "->" + std::to_string(r)] =
            bytes[static_cast<int>(phase)][s][r];
      }
    }
    phases[std::string(PhaseName(phase))] = {
        {"bytes", phase_bytes(phase)},
        {"rounds", phase_rounds(phase)},
        {"pairs", pairs}};
  }
  return {{"total_bytes", total_bytes()},
          {"rounds", round_count()},
          {"phases", phases}};
}

std::string TrafficLedger::ToCsv() const {
  std::ostringstream out;
  out << "phase,pair,bytes,rounds\n";
  for (Phase phase : kAllPhases) {
    for (int s = 0; s < kNumParties; ++s) {
      for (int r = 0; r < kNumParties; ++r) {
        if (s == r) continue;
        out << PhaseName(phase) << ',' << s << "->" << r << ','
            << bytes[static_cast<int>(phase)][s][r] << ','
            << phase_rounds(phase) << '\n';
      }
    }
  }
  return out.str();
}

Inbox Network::Exchange(Outbox outbox) {
  for (int s = 0; s < kNumParties; ++s) {
    if (!outbox[s][s].empty()) {
      throw NetworkError("party " + std::to_string(s) +
                         " addressed a message to itself");
    }
  }
  const int phase = static_cast<int>(phase_);
  const std::uint64_t round = ledger_.round_count();
  Inbox inbox;
  for (int s = 0; s < kNumParties; ++s) {
    for (int r = 0; r < kNumParties; ++r) {
      if (s == r) continue;
      Message& msg = outbox[s][r];
      if (msg.empty()) continue;
      ledger_.bytes[phase][s][r] += msg.size();
      TranscriptEntry entry{round, s, r, msg.size(), phase_, std::nullopt};
      if (retain_payloads_) entry.payload = msg;
      transcript_.push_back(std::move(entry));
      inbox[r][s] = std::move(msg);
    }
  }
  ++ledger_.rounds[phase];
  return inbox;
}

void AppendWords(Message& message, std::span<const std::uint64_t> words) {
  const std::size_t offset = message.size();
  message.resize(offset + words.size() * sizeof(std::uint64_t));
  // Little-endian hosts only; the simulator never leaves the process.
  std::memcpy(message.data() + offset, words.data(),
              words.size() * sizeof(std::uint64_t));
}

std::vector<std::uint64_t> ReadWords(const Message& message) {
  if (message.size() % sizeof(std::uint64_t) != 0) {
    throw NetworkError("message is not a whole number of ring elements");
  }
  std::vector<std::uint64_t> words(message.size() / sizeof(std::uint64_t));
  std::memcpy(words.data(), message.data(), message.size());
  return words;
}

}  // namespace mpcdfg
