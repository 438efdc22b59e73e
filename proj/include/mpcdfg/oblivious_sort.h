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

#ifndef MPCDFG_OBLIVIOUS_SORT_H_
#define MPCDFG_OBLIVIOUS_SORT_H_

#include <cstdint>
#include <vector>

#include "mpcdfg/event_log.h"
#include "mpcdfg/protocols.h"
#include "mpcdfg/ring_sharing.h"
#include "mpcdfg/runtime.h"

namespace mpcdfg {

// Trace index of power-of-two padding rows; above every real or dummy trace.
inline constexpr RingElem kPaddingTraceIndex = RingElem{1} << 62;

// Secret-shared event rows, one SharedVector per column. Rows are ordered by
// the composite key (trace, timestamp, order).
struct SharedEventTable {
  SharedVector trace;
  SharedVector timestamp;
  SharedVector order;
  std::vector<SharedVector> onehot;

  std::size_t size() const { return trace.size(); }
  std::size_t width() const { return onehot.size(); }

  SharedEventTable Slice(std::size_t offset, std::size_t count) const;
  void Append(const SharedEventTable& tail);

  // Publicly known rows that sort after everything else.
  static SharedEventTable Padding(std::size_t rows, std::size_t width);
};

struct Comparator {
  std::size_t lo;
  std::size_t hi;

  bool operator==(const Comparator&) const = default;
};

// Batcher odd-even mergesort for n = 2^k rows, grouped into stages of
// disjoint comparators. k(k+1)/2 stages.
std::vector<std::vector<Comparator>> BatcherStages(std::size_t n);

// (k^2 - k + 4) * 2^(k-2) - 1 comparators for n = 2^k, k >= 1.
std::uint64_t BatcherComparatorCount(unsigned k);

std::size_t NextPowerOfTwo(std::size_t n);

// Per-stage cost of the fused comparator: one bit decomposition of the
// three key differences, zero tests on two of them, two ANDs combining the
// lexicographic order, one bit conversion and one multiplication per column.
inline constexpr std::uint64_t kCompareSwapRounds =
    cost::kBitDecompose.rounds + cost::kZeroTest.rounds +
    2 * cost::kAndBits.rounds + cost::kBitToArith.rounds + cost::kMux.rounds;

constexpr std::uint64_t CompareSwapBytes(std::size_t width) {
  return 3 * cost::kBitDecompose.bytes_per_lane +
         2 * cost::kZeroTest.bytes_per_lane + 2 * cost::kAndBits.bytes_per_lane +
         cost::kBitToArith.bytes_per_lane +
         (3 + width) * cost::kMux.bytes_per_lane;
}

// Obliviously orders rows i < j: swaps when row j's key is smaller. Positions
// are public; which way the swap went is not.
void CompareSwap(Runtime& rt, SharedEventTable& table, std::size_t i,
                 std::size_t j);

// The same comparator list applied to every table, fused into one batch.
void CompareSwapBatch(Runtime& rt, std::vector<SharedEventTable>& tables,
                      const std::vector<Comparator>& comparators);

struct SortResult {
  std::vector<SharedEventTable> chunks;
  std::uint64_t comparators = 0;
  std::uint64_t stages = 0;
};

// Sorts each chunk by (trace, timestamp, order). Chunks must have equal
// length; they are padded to the next power of two, run through one Batcher
// network whose stages are batched across chunks, and cut back.
SortResult ParallelSort(Runtime& rt, std::vector<SharedEventTable> chunks);

SharedEventTable SortChunk(Runtime& rt, SharedEventTable table);

}  // namespace mpcdfg

#endif  // MPCDFG_OBLIVIOUS_SORT_H_
