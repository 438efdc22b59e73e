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
#include <cstdint>
#include <random>
#include <tuple>
#include <vector>

#include "gtest/gtest.h"
#include "mpcdfg/errors.h"
#include "test_util.h"

namespace mpcdfg {
namespace {

constexpr std::size_t kWidth = 3;
constexpr std::uint64_t kNone = ~std::uint64_t{0};

struct Row {
  std::uint64_t trace;
  std::uint64_t ts;
  std::uint64_t order = 0;
  std::uint64_t activity = kNone;

  auto Key() const { return std::tie(trace, ts, order); }
  bool operator==(const Row&) const = default;
};

SharedEventTable MakeTable(const std::vector<Row>& rows, Prg& prg) {
  std::vector<RingElem> trace, ts, order;
  std::vector<std::vector<RingElem>> onehot(kWidth);
  for (const auto& r : rows) {
    trace.push_back(r.trace);
    ts.push_back(r.ts);
    order.push_back(r.order);
    for (std::size_t a = 0; a < kWidth; ++a) {
      onehot[a].push_back(r.activity == a ? 1 : 0);
    }
  }
  SharedEventTable t;
  t.trace = testing::ShareValues(trace, prg);
  t.timestamp = testing::ShareValues(ts, prg);
  t.order = testing::ShareValues(order, prg);
  for (const auto& col : onehot) t.onehot.push_back(testing::ShareValues(col, prg));
  return t;
}

std::vector<Row> Open(const SharedEventTable& t) {
  const auto trace = Reconstruct(t.trace);
  const auto ts = Reconstruct(t.timestamp);
  const auto order = Reconstruct(t.order);
  std::vector<std::vector<RingElem>> onehot;
  for (const auto& col : t.onehot) onehot.push_back(Reconstruct(col));
  std::vector<Row> rows(t.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i] = {trace[i], ts[i], order[i], kNone};
    for (std::size_t a = 0; a < onehot.size(); ++a) {
      if (onehot[a][i] == 1) rows[i].activity = a;
    }
  }
  return rows;
}

std::vector<Row> RandomRows(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> trace(0, 4), ts(0, 6),
      act(0, kWidth);
  std::vector<Row> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t a = act(rng);
    rows[i] = {trace(rng), ts(rng), i, a == kWidth ? kNone : a};
  }
  return rows;
}

std::vector<Row> PlainSorted(std::vector<Row> rows) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.Key() < b.Key(); });
  return rows;
}

class SortTest : public ::testing::Test {
 protected:
  Runtime rt_{9};
  Prg prg_ = Prg::FromSeed(9, "sort-test");
  std::mt19937_64 rng_{2024};
};

TEST_F(SortTest, CompareSwapOrdersByTrace) {
  auto t = MakeTable({{1, 50, 0, 0}, {0, 10, 0, 1}}, prg_);
  CompareSwap(rt_, t, 0, 1);
  EXPECT_EQ(Open(t), (std::vector<Row>{{0, 10, 0, 1}, {1, 50, 0, 0}}));
}

TEST_F(SortTest, CompareSwapKeepsEqualKeys) {
  auto t = MakeTable({{2, 7, 0, 0}, {2, 7, 0, 2}}, prg_);
  CompareSwap(rt_, t, 0, 1);
  EXPECT_EQ(Open(t), (std::vector<Row>{{2, 7, 0, 0}, {2, 7, 0, 2}}));
}

TEST_F(SortTest, CompareSwapPutsRealRowBeforeDummy) {
  auto t = MakeTable({{3, kDummyTimestamp, 0, kNone}, {3, 1'700'000'000, 1, 1}},
                     prg_);
  CompareSwap(rt_, t, 0, 1);
  EXPECT_EQ(Open(t)[0].activity, 1u);
  EXPECT_THROW(CompareSwap(rt_, t, 1, 1), ShapeError);
}

TEST_F(SortTest, CompareSwapBreaksTimestampTiesByOrder) {
  auto t = MakeTable({{0, 5, 9, 0}, {0, 5, 4, 1}}, prg_);
  CompareSwap(rt_, t, 0, 1);
  EXPECT_EQ(Open(t)[0].order, 4u);
}

TEST_F(SortTest, ReversedTableSorted) {
  std::vector<Row> rows;
  for (std::uint64_t i = 0; i < 8; ++i) rows.push_back({7 - i, 100 - i, 0, i % 3});
  const auto sorted = SortChunk(rt_, MakeTable(rows, prg_));
  EXPECT_EQ(Open(sorted), PlainSorted(rows));
}

TEST_F(SortTest, EightRowNetworkHasNineteenComparators) {
  std::size_t count = 0;
  for (const auto& stage : BatcherStages(8)) count += stage.size();
  EXPECT_EQ(count, 19u);
  EXPECT_EQ(BatcherComparatorCount(3), 19u);
  EXPECT_EQ(BatcherStages(8).size(), 6u);
}

TEST_F(SortTest, ComparatorFormulaMatchesEnumeration) {
  for (unsigned k = 1; k <= 12; ++k) {
    std::uint64_t count = 0;
    for (const auto& stage : BatcherStages(std::size_t{1} << k)) {
      count += stage.size();
    }
    EXPECT_EQ(count, BatcherComparatorCount(k)) << "k=" << k;
  }
  EXPECT_THROW(BatcherStages(6), ShapeError);
}

TEST_F(SortTest, NetworkSortsAllZeroOneInputs) {
  for (std::size_t n : {2u, 4u, 8u, 16u}) {
    const auto stages = BatcherStages(n);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i) & 1;
      for (const auto& stage : stages) {
        for (const auto& c : stage) {
          ASSERT_LT(c.lo, c.hi);
          if (v[c.lo] > v[c.hi]) std::swap(v[c.lo], v[c.hi]);
        }
      }
      ASSERT_TRUE(std::is_sorted(v.begin(), v.end())) << "n=" << n;
    }
  }
}

TEST_F(SortTest, StagesTouchEachRowAtMostOnce) {
  for (const auto& stage : BatcherStages(64)) {
    std::vector<int> seen(64, 0);
    for (const auto& c : stage) {
      ASSERT_EQ(seen[c.lo]++, 0);
      ASSERT_EQ(seen[c.hi]++, 0);
    }
  }
}

TEST_F(SortTest, RandomPermutationMatchesPlaintextSort) {
  auto rows = RandomRows(16, rng_);
  const auto expected = PlainSorted(rows);
  std::shuffle(rows.begin(), rows.end(), rng_);
  EXPECT_EQ(Open(SortChunk(rt_, MakeTable(rows, prg_))), PlainSorted(rows));
  EXPECT_EQ(PlainSorted(rows), expected);
}

TEST_F(SortTest, NonPowerOfTwoIsPaddedAndTrimmed) {
  const auto rows = RandomRows(11, rng_);
  const auto sorted = SortChunk(rt_, MakeTable(rows, prg_));
  EXPECT_EQ(sorted.size(), 11u);
  EXPECT_EQ(Open(sorted), PlainSorted(rows));
}

TEST_F(SortTest, ParallelSortBatchesStages) {
  const auto a = RandomRows(8, rng_);
  const auto b = RandomRows(8, rng_);
  std::vector<SharedEventTable> chunks = {MakeTable(a, prg_), MakeTable(b, prg_)};
  const auto before = rt_.network().SnapshotLedger();
  const SortResult result = ParallelSort(rt_, std::move(chunks));
  const auto delta = rt_.network().SnapshotLedger().Since(before);
  EXPECT_EQ(Open(result.chunks[0]), PlainSorted(a));
  EXPECT_EQ(Open(result.chunks[1]), PlainSorted(b));
  EXPECT_EQ(result.stages, 6u);
  EXPECT_EQ(result.comparators, 2u * 19);
  EXPECT_EQ(delta.round_count(), 6 * kCompareSwapRounds);
  EXPECT_EQ(delta.bytes_sent(PartyId(0)), 2u * 19 * CompareSwapBytes(kWidth));
}

TEST_F(SortTest, SingleChunkParallelSortEqualsSortChunk) {
  const auto rows = RandomRows(8, rng_);
  const SharedEventTable table = MakeTable(rows, prg_);
  std::vector<SharedEventTable> one = {table};
  EXPECT_EQ(Open(ParallelSort(rt_, one).chunks[0]),
            Open(SortChunk(rt_, table)));
}

TEST_F(SortTest, ChunkingNeedsFewerComparators) {
  for (unsigned k = 2; k <= 12; ++k) {
    for (unsigned j = 1; j <= k; ++j) {
      const std::uint64_t chunked =
          (std::uint64_t{1} << j) * BatcherComparatorCount(k - j);
      EXPECT_LT(chunked, BatcherComparatorCount(k)) << k << " " << j;
    }
  }
}

TEST_F(SortTest, UnequalChunksRejected) {
  std::vector<SharedEventTable> chunks = {MakeTable(RandomRows(4, rng_), prg_),
                                          MakeTable(RandomRows(5, rng_), prg_)};
  EXPECT_THROW(ParallelSort(rt_, std::move(chunks)), ShapeError);
}

TEST_F(SortTest, RoundsIndependentOfChunkCount) {
  std::vector<std::uint64_t> rounds;
  for (std::size_t c : {1u, 2u, 4u}) {
    std::vector<SharedEventTable> chunks;
    for (std::size_t i = 0; i < c; ++i) {
      chunks.push_back(MakeTable(RandomRows(16, rng_), prg_));
    }
    const auto before = rt_.network().SnapshotLedger();
    ParallelSort(rt_, std::move(chunks));
    rounds.push_back(rt_.network().SnapshotLedger().Since(before).round_count());
  }
  EXPECT_EQ(rounds[0], rounds[1]);
  EXPECT_EQ(rounds[1], rounds[2]);
}

TEST_F(SortTest, TranscriptIndependentOfData) {
  auto transcript = [&](const std::vector<Row>& rows) {
    Runtime rt(1);
    SortChunk(rt, MakeTable(rows, prg_));
    return rt.network().transcript();
  };
  const auto t1 = transcript(RandomRows(16, rng_));
  std::vector<Row> sorted(16);
  for (std::uint64_t i = 0; i < 16; ++i) sorted[i] = {i, i, 0, 0};
  const auto t2 = transcript(sorted);
  ASSERT_EQ(t1.size(), t2.size());
  for (std::size_t i = 0; i < t1.size(); ++i) EXPECT_TRUE(t1[i].SameShape(t2[i]));
}

TEST_F(SortTest, OutputIsPermutationOfInput) {
  const auto rows = RandomRows(32, rng_);
  auto out = Open(SortChunk(rt_, MakeTable(rows, prg_)));
  for (std::size_t i = 1; i < out.size(); ++i) {
    EXPECT_LE(out[i - 1].Key(), out[i].Key());
  }
  auto key = [](const Row& r) {
    return std::make_tuple(r.trace, r.ts, r.order, r.activity);
  };
  auto in = rows;
  std::sort(in.begin(), in.end(),
            [&](const Row& a, const Row& b) { return key(a) < key(b); });
  std::sort(out.begin(), out.end(),
            [&](const Row& a, const Row& b) { return key(a) < key(b); });
  EXPECT_EQ(in, out);
}

}  // namespace
}  // namespace mpcdfg
