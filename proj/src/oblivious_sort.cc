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

#include "mpcdfg/oblivious_sort.h"

#include <algorithm>
#include <bit>

namespace mpcdfg {

SharedEventTable SharedEventTable::Slice(std::size_t offset,
                                         std::size_t count) const {
  SharedEventTable out;
  out.trace = trace.Slice(offset, count);
  out.timestamp = timestamp.Slice(offset, count);
  out.order = order.Slice(offset, count);
  out.onehot.reserve(onehot.size());
  for (const auto& col : onehot) out.onehot.push_back(col.Slice(offset, count));
  return out;
}

void SharedEventTable::Append(const SharedEventTable& tail) {
  if (!onehot.empty() && onehot.size() != tail.onehot.size()) {
    throw ShapeError("appending tables of different width");
  }
  if (onehot.empty() && size() == 0) onehot.resize(tail.onehot.size());
  trace.Append(tail.trace);
  timestamp.Append(tail.timestamp);
  order.Append(tail.order);
  for (std::size_t c = 0; c < onehot.size(); ++c) onehot[c].Append(tail.onehot[c]);
}

SharedEventTable SharedEventTable::Padding(std::size_t rows,
                                           std::size_t width) {
  SharedEventTable out;
  out.trace = SharedVector::FromPublic(rows, kPaddingTraceIndex);
  out.timestamp = SharedVector::FromPublic(rows, kDummyTimestamp);
  out.order = SharedVector(rows);
  out.onehot.assign(width, SharedVector(rows));
  return out;
}

std::size_t NextPowerOfTwo(std::size_t n) {
  return n <= 1 ? 1 : std::bit_ceil(n);
}

std::vector<std::vector<Comparator>> BatcherStages(std::size_t n) {
  if (!std::has_single_bit(n)) {
    throw ShapeError("Batcher network needs a power-of-two length");
  }
  std::vector<std::vector<Comparator>> stages;
  for (std::size_t p = 1; p < n; p <<= 1) {
    for (std::size_t k = p; k >= 1; k >>= 1) {
      std::vector<Comparator> stage;
      for (std::size_t j = k % p; j + k < n; j += 2 * k) {
        for (std::size_t i = 0; i < std::min(k, n - j - k); ++i) {
          if ((i + j) / (2 * p) == (i + j + k) / (2 * p)) {
            stage.push_back({i + j, i + j + k});
          }
        }
      }
      stages.push_back(std::move(stage));
    }
  }
  return stages;
}

std::uint64_t BatcherComparatorCount(unsigned k) {
  if (k == 0) return 0;
  // (k^2 - k + 4) * 2^(k-2) - 1, written to stay integral at k = 1.
  return ((std::uint64_t{k} * k - k + 4) << k) / 4 - 1;
}

void CompareSwapBatch(Runtime& rt, std::vector<SharedEventTable>& tables,
                      const std::vector<Comparator>& comparators) {
  if (tables.empty() || comparators.empty()) return;
  const std::size_t width = tables.front().width();
  std::vector<std::size_t> lo(comparators.size());
  std::vector<std::size_t> hi(comparators.size());
  for (std::size_t c = 0; c < comparators.size(); ++c) {
    lo[c] = comparators[c].lo;
    hi[c] = comparators[c].hi;
  }

  // Column order: trace, timestamp, order, onehot[0..width).
  const std::size_t columns = 3 + width;
  auto column_of = [](SharedEventTable& t, std::size_t c) -> SharedVector& {
    if (c == 0) return t.trace;
    if (c == 1) return t.timestamp;
    if (c == 2) return t.order;
    return t.onehot[c - 3];
  };

  std::vector<SharedVector> lo_cols(columns);
  std::vector<SharedVector> hi_cols(columns);
  for (std::size_t c = 0; c < columns; ++c) {
    for (auto& t : tables) {
      if (t.width() != width) throw ShapeError("chunk widths differ");
      lo_cols[c].Append(column_of(t, c).Gather(lo));
      hi_cols[c].Append(column_of(t, c).Gather(hi));
    }
  }
  const std::size_t lanes = lo_cols[0].size();

  // swap <=> key(hi) < key(lo), read off the sign and zero bits of hi - lo.
  std::array<SharedVector, 3> key_diffs = {SubLocal(hi_cols[0], lo_cols[0]),
                                           SubLocal(hi_cols[1], lo_cols[1]),
                                           SubLocal(hi_cols[2], lo_cols[2])};
  const SharedBits bits = BitDecompose(rt, SharedVector::Concat(key_diffs));
  const SharedBits equal = ZeroTest(rt, bits.Slice(0, 2 * lanes));
  const SharedBits less = ExtractBit(bits, 63);

  const SharedBits trace_eq = equal.Slice(0, lanes);
  const SharedBits ts_eq = equal.Slice(lanes, lanes);
  const SharedBits trace_lt = less.Slice(0, lanes);
  const SharedBits ts_lt = less.Slice(lanes, lanes);
  const SharedBits order_lt = less.Slice(2 * lanes, lanes);

  // The two disjuncts of each OR are exclusive, so OR is XOR.
  const SharedBits ts_key_lt = XorLocal(ts_lt, AndBits(rt, ts_eq, order_lt));
  const SharedBits swap_bits =
      XorLocal(trace_lt, AndBits(rt, trace_eq, ts_key_lt));
  const SharedBitVector swap = BitToArith(rt, swap_bits);

  std::vector<SharedVector> swap_rep(columns, swap);
  std::vector<SharedVector> diffs(columns);
  for (std::size_t c = 0; c < columns; ++c) {
    diffs[c] = SubLocal(hi_cols[c], lo_cols[c]);
  }
  const SharedVector delta =
      MulVec(rt, SharedVector::Concat(swap_rep), SharedVector::Concat(diffs));

  const std::size_t per_table = comparators.size();
  for (std::size_t c = 0; c < columns; ++c) {
    const SharedVector d = delta.Slice(c * lanes, lanes);
    const SharedVector new_lo = AddLocal(lo_cols[c], d);
    const SharedVector new_hi = SubLocal(hi_cols[c], d);
    for (std::size_t t = 0; t < tables.size(); ++t) {
      SharedVector& col = column_of(tables[t], c);
      col.Scatter(lo, new_lo.Slice(t * per_table, per_table));
      col.Scatter(hi, new_hi.Slice(t * per_table, per_table));
    }
  }
}

void CompareSwap(Runtime& rt, SharedEventTable& table, std::size_t i,
                 std::size_t j) {
  if (i >= j || j >= table.size()) throw ShapeError("bad comparator");
  std::vector<SharedEventTable> one;
  one.push_back(std::move(table));
  CompareSwapBatch(rt, one, {{i, j}});
  table = std::move(one.front());
}

SortResult ParallelSort(Runtime& rt, std::vector<SharedEventTable> chunks) {
  SortResult result;
  if (chunks.empty()) return result;
  const std::size_t n = chunks.front().size();
  const std::size_t width = chunks.front().width();
  for (const auto& c : chunks) {
    if (c.size() != n) throw ShapeError("parallel sort needs equal-length chunks");
    if (c.width() != width) throw ShapeError("chunk widths differ");
  }
  const std::size_t padded = NextPowerOfTwo(n);
  if (padded != n) {
    const SharedEventTable pad = SharedEventTable::Padding(padded - n, width);
    for (auto& c : chunks) c.Append(pad);
  }
  for (const auto& stage : BatcherStages(padded)) {
    CompareSwapBatch(rt, chunks, stage);
    result.comparators += stage.size() * chunks.size();
    ++result.stages;
  }
  if (padded != n) {
    for (auto& c : chunks) c = c.Slice(0, n);
  }
  result.chunks = std::move(chunks);
  return result;
}

SharedEventTable SortChunk(Runtime& rt, SharedEventTable table) {
  std::vector<SharedEventTable> one;
  one.push_back(std::move(table));
  return std::move(ParallelSort(rt, std::move(one)).chunks.front());
}

}  // namespace mpcdfg
