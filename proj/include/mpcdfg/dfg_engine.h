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

#ifndef MPCDFG_DFG_ENGINE_H_
#define MPCDFG_DFG_ENGINE_H_

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpcdfg/event_log.h"
#include "mpcdfg/oblivious_sort.h"
#include "mpcdfg/protocols.h"
#include "mpcdfg/runtime.h"

namespace mpcdfg {

// Annotated directly-follows graph under secret sharing: counts[p*w+q] is the
// number of times activity q directly followed p, durations[p*w+q] the summed
// seconds between them.
struct SharedDFG {
  std::size_t width = 0;
  SharedVector counts;
  SharedVector durations;

  static SharedDFG Zero(std::size_t width);
};

// Plaintext DFG, as produced by the oracle or by a test-mode reveal.
struct PlainDfg {
  std::size_t width = 0;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> durations;

  explicit PlainDfg(std::size_t w = 0)
      : width(w), counts(w * w, 0), durations(w * w, 0) {}

  std::uint64_t count(std::size_t p, std::size_t q) const {
    return counts[p * width + q];
  }
  std::uint64_t duration(std::size_t p, std::size_t q) const {
    return durations[p * width + q];
  }

  // {"width": w, "G": [[...]], "W": [[...]]}
  nlohmann::json ToJson() const;
  bool operator==(const PlainDfg&) const = default;
};

// Reconstructs the whole matrix without touching the network. Only for tests
// and the explicit --unsafe-reveal-dfg dump.
PlainDfg UnsafeRevealDfg(const SharedDFG& dfg);

// Per adjacent pair: eq on trace ids, outer product of the one-hot vectors,
// flag mask, time-lag product.
inline constexpr std::uint64_t kDfgRounds =
    cost::kEq.rounds + cost::kOuterProduct.rounds + 2 * cost::kMulVec.rounds;

constexpr std::uint64_t DfgBytesPerPair(std::size_t width) {
  return cost::kEq.bytes_per_lane +
         width * width *
             (cost::kOuterProduct.bytes_per_lane +
              2 * cost::kMulVec.bytes_per_lane);
}

// DFG of one sorted table.
SharedDFG DfgChunk(Runtime& rt, const SharedEventTable& sorted);

// DFGs of several sorted tables with every protocol step batched across
// them, so the round count is that of a single table.
std::vector<SharedDFG> DfgChunks(Runtime& rt,
                                 std::span<const SharedEventTable> sorted);

// Cell-wise share addition.
SharedDFG MergeDfgs(std::span<const SharedDFG> parts);

// Order-key tags separating the two input parties' rows on timestamp ties.
inline constexpr std::uint64_t kPartyOrderShift = 32;

// Uploads plaintext rows of `owner` as columns trace, timestamp, order,
// onehot[0..width).
std::vector<std::vector<RingElem>> TableColumns(
    std::span<const PreparedLog> chunks, std::uint64_t party_tag);

struct BuildStats {
  std::size_t chunk_count = 0;
  std::size_t rows_per_chunk = 0;
  std::uint64_t comparators = 0;
  std::uint64_t sort_stages = 0;
  std::uint64_t adjacent_pairs = 0;
  double input_seconds = 0;
  double sort_seconds = 0;
  double dfg_seconds = 0;
};

// Input parties 0 (log A) and 1 (log B) announce their local statistics in
// plaintext; this is the only non-share traffic of a run.
PublicMetadata AgreeMetadata(Runtime& rt, const LocalStatistics& a,
                             const LocalStatistics& b,
                             std::size_t activity_padding,
                             std::size_t chunk_count);

// Shares both prepared logs, combines them per chunk, sorts the chunks in
// parallel and accumulates the merged DFG.
SharedDFG BuildDfg(Runtime& rt, const PreparedLog& log_a,
                   const PreparedLog& log_b, std::size_t chunk_count,
                   BuildStats* stats = nullptr);

}  // namespace mpcdfg

#endif  // MPCDFG_DFG_ENGINE_H_
