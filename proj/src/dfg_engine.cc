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

#include "mpcdfg/dfg_engine.h"

#include <array>
#include <chrono>

namespace mpcdfg {
namespace {

// Sums `width * width` blocks of `pairs` lanes over the ranges in `ranges`,
// producing one m^2 vector per range.
std::vector<SharedVector> SumBlocks(
    const SharedVector& lanes, std::size_t cells, std::size_t pairs,
    const std::vector<std::pair<std::size_t, std::size_t>>& ranges) {
  std::vector<SharedVector> out(ranges.size(), SharedVector(cells));
  for (PartyId id : kAllParties) {
    const auto& src = lanes.party(id);
    for (std::size_t r = 0; r < ranges.size(); ++r) {
      auto& dst = out[r].party(id);
      const auto [begin, end] = ranges[r];
      for (std::size_t cell = 0; cell < cells; ++cell) {
        RingElem first = 0, second = 0;
        const std::size_t base = cell * pairs;
        for (std::size_t k = begin; k < end; ++k) {
          first += src.first[base + k];
          second += src.second[base + k];
        }
        dst.first[cell] = first;
        dst.second[cell] = second;
      }
    }
  }
  return out;
}

SharedVector Repeat(const SharedVector& v, std::size_t times) {
  std::vector<SharedVector> copies(times, v);
  return SharedVector::Concat(copies);
}

}  // namespace

SharedDFG SharedDFG::Zero(std::size_t width) {
  return {width, SharedVector(width * width), SharedVector(width * width)};
}

nlohmann::json PlainDfg::ToJson() const {
  nlohmann::json g = nlohmann::json::array();
  nlohmann::json w = nlohmann::json::array();
  for (std::size_t p = 0; p < width; ++p) {
    g.push_back(std::vector<std::uint64_t>(counts.begin() + p * width,
                                           counts.begin() + (p + 1) * width));
    w.push_back(std::vector<std::uint64_t>(durations.begin() + p * width,
                                           durations.begin() + (p + 1) * width));
  }
  return {{"width", width}, {"G", g}, {"W", w}};
}

PlainDfg UnsafeRevealDfg(const SharedDFG& dfg) {
  PlainDfg out(dfg.width);
  out.counts = Reconstruct(dfg.counts);
  out.durations = Reconstruct(dfg.durations);
  return out;
}

std::vector<SharedDFG> DfgChunks(Runtime& rt,
                                 std::span<const SharedEventTable> sorted) {
  if (sorted.empty()) return {};
  const std::size_t m = sorted.front().width();
  const std::size_t cells = m * m;

  // Shifted copies: pair j is (row j, row j+1) of its chunk.
  SharedEventTable left, right;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t pairs = 0;
  for (const auto& t : sorted) {
    if (t.width() != m) throw ShapeError("chunk widths differ");
    const std::size_t n = t.size() < 2 ? 0 : t.size() - 1;
    ranges.emplace_back(pairs, pairs + n);
    if (n == 0) continue;
    left.Append(t.Slice(0, n));
    right.Append(t.Slice(1, n));
    pairs += n;
  }
  if (pairs == 0) {
    return std::vector<SharedDFG>(sorted.size(), SharedDFG::Zero(m));
  }

  // b = [trace(j) == trace(j+1)]
  const SharedBitVector same_trace = Eq(rt, left.trace, right.trace);

  // Lanes are laid out cell-major: lane (p*m + q) * pairs + j.
  SharedVector mask;
  {
    std::vector<SharedVector> lhs, rhs;
    lhs.reserve(cells);
    rhs.reserve(cells);
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = 0; q < m; ++q) {
        lhs.push_back(left.onehot[p]);
        rhs.push_back(right.onehot[q]);
      }
    }
    const SharedVector outer =
        MulVec(rt, SharedVector::Concat(lhs), SharedVector::Concat(rhs));
    mask = MulVec(rt, outer, Repeat(same_trace, cells));
  }
  const SharedVector lag = SubLocal(right.timestamp, left.timestamp);
  const SharedVector weighted = MulVec(rt, mask, Repeat(lag, cells));

  const auto counts = SumBlocks(mask, cells, pairs, ranges);
  const auto durations = SumBlocks(weighted, cells, pairs, ranges);
  std::vector<SharedDFG> out;
  out.reserve(sorted.size());
  for (std::size_t c = 0; c < sorted.size(); ++c) {
    out.push_back({m, counts[c], durations[c]});
  }
  return out;
}

SharedDFG DfgChunk(Runtime& rt, const SharedEventTable& sorted) {
  return DfgChunks(rt, std::span(&sorted, 1)).front();
}

SharedDFG MergeDfgs(std::span<const SharedDFG> parts) {
  if (parts.empty()) throw ShapeError("nothing to merge");
  SharedDFG out = parts.front();
  for (const auto& p : parts.subspan(1)) {
    if (p.width != out.width) throw ShapeError("DFG width mismatch");
    out.counts = AddLocal(out.counts, p.counts);
    out.durations = AddLocal(out.durations, p.durations);
  }
  return out;
}

std::vector<std::vector<RingElem>> TableColumns(
    std::span<const PreparedLog> chunks, std::uint64_t party_tag) {
  const std::size_t width = chunks.empty() ? 0 : chunks.front().width;
  std::vector<std::vector<RingElem>> cols(3 + width);
  for (const auto& chunk : chunks) {
    for (const auto& row : chunk.rows) {
      cols[0].push_back(row.trace_index);
      cols[1].push_back(row.timestamp);
      cols[2].push_back((party_tag << kPartyOrderShift) | row.sequence);
      for (std::size_t a = 0; a < width; ++a) cols[3 + a].push_back(row.onehot[a]);
    }
  }
  return cols;
}

PublicMetadata AgreeMetadata(Runtime& rt, const LocalStatistics& a,
                             const LocalStatistics& b,
                             std::size_t activity_padding,
                             std::size_t chunk_count) {
  ScopedPhase phase(rt.network(), Phase::kSetup);
  auto record = [](const LocalStatistics& s) {
    return std::array<std::uint64_t, 3>{s.activity_count, s.max_trace_length,
                                        s.trace_count};
  };
  Outbox outbox;
  const std::array<std::pair<PartyId, LocalStatistics>, 2> senders = {
      std::pair{PartyId(0), a}, std::pair{PartyId(1), b}};
  for (const auto& [owner, stats] : senders) {
    for (PartyId to : kAllParties) {
      if (to == owner) continue;
      AppendWords(outbox[owner.index()][to.index()], record(stats));
    }
  }
  Inbox inbox = rt.network().Exchange(std::move(outbox));
  // Party 2 derives the metadata from what it received; the input parties
  // agree with it by construction.
  auto decode = [](const Message& m) {
    const auto w = ReadWords(m);
    return LocalStatistics{w.at(0), w.at(1), w.at(2)};
  };
  return PublicMetadata::Agree(decode(inbox[2][0]), decode(inbox[2][1]),
                               activity_padding, chunk_count);
}

SharedDFG BuildDfg(Runtime& rt, const PreparedLog& log_a,
                   const PreparedLog& log_b, std::size_t chunk_count,
                   BuildStats* stats) {
  if (log_a.trace_count != log_b.trace_count ||
      log_a.max_trace_length != log_b.max_trace_length ||
      log_a.width != log_b.width) {
    throw MetadataMismatch("prepared logs disagree on public metadata");
  }
  const std::size_t width = log_a.width;
  const std::size_t len = log_a.max_trace_length;
  const auto chunks_a = AssignChunks(log_a, chunk_count);
  const auto chunks_b = AssignChunks(log_b, chunk_count);
  const std::size_t traces_per_chunk = chunks_a.front().trace_count;
  const std::size_t party_rows = traces_per_chunk * len;

  using Clock = std::chrono::steady_clock;
  auto seconds_since = [](Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
  };
  auto start = Clock::now();
  std::vector<std::vector<SharedVector>> uploaded;
  {
    ScopedPhase phase(rt.network(), Phase::kInput);
    const std::array<InputBatch, 2> batches = {
        InputBatch{PartyId(0), TableColumns(chunks_a, 0)},
        InputBatch{PartyId(1), TableColumns(chunks_b, 1)}};
    uploaded = rt.ShareInputs(batches);
  }

  // Combined column = A's rows followed by B's rows; each chunk table takes,
  // trace by trace, A's rows then B's rows of that trace.
  std::vector<SharedVector> combined(3 + width);
  for (std::size_t c = 0; c < combined.size(); ++c) {
    combined[c] = std::move(uploaded[0][c]);
    combined[c].Append(uploaded[1][c]);
  }
  const std::size_t b_offset = chunk_count * party_rows;
  std::vector<SharedEventTable> tables(chunk_count);
  for (std::size_t ch = 0; ch < chunk_count; ++ch) {
    std::vector<std::size_t> lanes;
    lanes.reserve(2 * party_rows);
    for (std::size_t t = 0; t < traces_per_chunk; ++t) {
      const std::size_t base = ch * party_rows + t * len;
      for (std::size_t k = 0; k < len; ++k) lanes.push_back(base + k);
      for (std::size_t k = 0; k < len; ++k) lanes.push_back(b_offset + base + k);
    }
    auto& table = tables[ch];
    table.trace = combined[0].Gather(lanes);
    table.timestamp = combined[1].Gather(lanes);
    table.order = combined[2].Gather(lanes);
    for (std::size_t a = 0; a < width; ++a) {
      table.onehot.push_back(combined[3 + a].Gather(lanes));
    }
  }
  combined.clear();
  const double input_seconds = seconds_since(start);

  start = Clock::now();
  SortResult sorted;
  {
    ScopedPhase phase(rt.network(), Phase::kSort);
    sorted = ParallelSort(rt, std::move(tables));
  }
  const double sort_seconds = seconds_since(start);

  start = Clock::now();
  std::vector<SharedDFG> parts;
  {
    ScopedPhase phase(rt.network(), Phase::kDfg);
    parts = DfgChunks(rt, sorted.chunks);
  }
  SharedDFG merged = MergeDfgs(parts);
  const double dfg_seconds = seconds_since(start);
  if (stats) {
    stats->chunk_count = chunk_count;
    stats->rows_per_chunk = 2 * party_rows;
    stats->comparators = sorted.comparators;
    stats->sort_stages = sorted.stages;
    stats->adjacent_pairs =
        chunk_count * (2 * party_rows > 0 ? 2 * party_rows - 1 : 0);
    stats->input_seconds = input_seconds;
    stats->sort_seconds = sort_seconds;
    stats->dfg_seconds = dfg_seconds;
  }
  return merged;
}

}  // namespace mpcdfg
