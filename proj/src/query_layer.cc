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

#include "mpcdfg/query_layer.h"

#include <algorithm>

#include "mpcdfg/errors.h"
#include "mpcdfg/protocols.h"

namespace mpcdfg {
namespace {

using Payload = std::vector<SharedVector>;

// Repeatedly pairs up neighbouring candidates; the left one survives unless
// `right_wins` says otherwise. Candidate order is preserved, so the left
// entry of every pair has the smaller index.
template <typename RightWins>
Payload Tournament(Runtime& rt, Payload cand, RightWins right_wins) {
  const std::size_t cols = cand.size();
  while (cand[0].size() > 1) {
    const std::size_t s = cand[0].size();
    const std::size_t half = s / 2;
    std::vector<std::size_t> left_lanes(half), right_lanes(half);
    for (std::size_t j = 0; j < half; ++j) {
      left_lanes[j] = 2 * j;
      right_lanes[j] = 2 * j + 1;
    }
    Payload l, r;
    for (const auto& col : cand) {
      l.push_back(col.Gather(left_lanes));
      r.push_back(col.Gather(right_lanes));
    }
    const SharedBitVector rw = right_wins(l, r);
    std::vector<SharedVector> sel(cols, rw), diff;
    for (std::size_t c = 0; c < cols; ++c) diff.push_back(SubLocal(r[c], l[c]));
    const SharedVector delta = MulVec(rt, SharedVector::Concat(sel),
                                      SharedVector::Concat(diff));
    Payload next;
    for (std::size_t c = 0; c < cols; ++c) {
      next.push_back(AddLocal(l[c], delta.Slice(c * half, half)));
      if (s % 2 == 1) next.back().Append(cand[c].Slice(s - 1, 1));
    }
    cand = std::move(next);
  }
  return cand;
}

std::vector<std::size_t> Lanes(
    const std::vector<std::pair<std::size_t, std::size_t>>& cells,
    std::size_t width) {
  std::vector<std::size_t> lanes;
  lanes.reserve(cells.size());
  for (const auto& [p, q] : cells) lanes.push_back(p * width + q);
  return lanes;
}

SharedVector PublicIndices(std::size_t n) {
  std::vector<RingElem> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return SharedVector::FromPublic(idx);
}

void CheckWidth(const SharedDFG& dfg, const PublicMetadata& metadata) {
  if (dfg.width != metadata.global_width()) {
    throw ShapeError("DFG width does not match public metadata");
  }
}

}  // namespace

std::optional<double> QueryEntry::mean_seconds() const {
  if (!count || !total_seconds || *count == 0) return std::nullopt;
  return static_cast<double>(*total_seconds) / static_cast<double>(*count);
}

nlohmann::json QueryResult::ToJson() const {
  nlohmann::json results = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json j = {{"from", e.from}, {"to", e.to}};
    j["count"] = e.count ? nlohmann::json(*e.count) : nlohmann::json(nullptr);
    j["total_seconds"] = e.total_seconds ? nlohmann::json(*e.total_seconds)
                                         : nlohmann::json(nullptr);
    const auto mean = e.mean_seconds();
    j["mean_seconds"] = mean ? nlohmann::json(*mean) : nlohmann::json(nullptr);
    results.push_back(std::move(j));
  }
  return {{"query", query}, {"k", k}, {"results", results}, {"reveals", reveals}};
}

HandoffDomain::HandoffDomain(const PublicMetadata& metadata)
    : m_a_(metadata.m_a), m_b_(metadata.m_b) {
  const std::size_t m = metadata.true_width();
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < m; ++q) {
      if (Contains(p, q)) cells_.emplace_back(p, q);
    }
  }
}

bool HandoffDomain::Contains(std::size_t p, std::size_t q) const {
  const std::size_t m = m_a_ + m_b_;
  if (p >= m || q >= m) return false;
  return (p < m_a_) != (q < m_a_);
}

std::vector<std::pair<std::size_t, std::size_t>> ActivityCells(
    const PublicMetadata& metadata) {
  const std::size_t m = metadata.true_width();
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  cells.reserve(m * m);
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = 0; q < m; ++q) cells.emplace_back(p, q);
  }
  return cells;
}

void CheckMagnitudeGuard(const PublicMetadata& metadata,
                         std::uint64_t time_window) {
  using u128 = unsigned __int128;
  const u128 rows = u128{metadata.trace_count} * 2 * metadata.max_trace_length;
  if (rows >= (u128{1} << 31)) {
    throw QueryError("magnitude guard: too many event rows for ranking");
  }
  const u128 bound = u128{metadata.trace_count} * time_window * rows;
  if (time_window == 0 || bound >= (u128{1} << 63)) {
    throw QueryError("magnitude guard: lag products may exceed 2^63");
  }
}

std::pair<std::uint64_t, std::uint64_t> RevealCell(
    Runtime& rt, const SharedDFG& dfg, const PublicMetadata& metadata,
    std::size_t p, std::size_t q) {
  CheckWidth(dfg, metadata);
  const std::size_t m = metadata.true_width();
  if (p >= m || q >= m) throw QueryError("cell index outside activity range");
  const std::size_t lane = p * dfg.width + q;
  const std::vector<SharedVector> parts = {dfg.counts.Slice(lane, 1),
                                           dfg.durations.Slice(lane, 1)};
  ScopedPhase phase(rt.network(), Phase::kQuery);
  const auto opened = rt.Open(SharedVector::Concat(parts));
  return {opened[0], opened[1]};
}

QueryResult CellQuery(Runtime& rt, const SharedDFG& dfg,
                      const PublicMetadata& metadata, std::size_t p,
                      std::size_t q) {
  const auto [c, w] = RevealCell(rt, dfg, metadata, p, q);
  return {"cell", 1, {{p, q, c, w}}, 2};
}

QueryResult TopkHandoffs(Runtime& rt, const SharedDFG& dfg,
                         const PublicMetadata& metadata, std::size_t k) {
  CheckWidth(dfg, metadata);
  const HandoffDomain domain(metadata);
  if (k > domain.size()) throw QueryError("k exceeds the hand-off domain");
  ScopedPhase phase(rt.network(), Phase::kQuery);

  auto cells = domain.cells();
  SharedVector idx = PublicIndices(cells.size());
  SharedVector counts = dfg.counts.Gather(Lanes(cells, dfg.width));
  QueryResult result{"topk-handoffs", k, {}, 0};
  for (std::size_t round = 0; round < k; ++round) {
    const Payload winner = Tournament(
        rt, {idx, counts}, [&rt](const Payload& l, const Payload& r) {
          return Lt(rt, l[1], r[1]);
        });
    const auto opened = rt.Open(SharedVector::Concat(winner));
    result.reveals += 2;
    const std::size_t pos = opened[0];
    if (pos >= cells.size()) throw IntegrityError("tournament index corrupt");
    result.entries.push_back(
        {cells[pos].first, cells[pos].second, opened[1], std::nullopt});

    // The winner's position is public now; drop it and renumber.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i != pos) keep.push_back(i);
    }
    cells.erase(cells.begin() + pos);
    counts = counts.Gather(keep);
    idx = PublicIndices(cells.size());
  }
  return result;
}

QueryResult TopkBottlenecks(Runtime& rt, const SharedDFG& dfg,
                            const PublicMetadata& metadata, std::size_t k,
                            std::uint64_t time_window) {
  CheckWidth(dfg, metadata);
  CheckMagnitudeGuard(metadata, time_window);
  auto cells = ActivityCells(metadata);
  if (k > cells.size()) throw QueryError("k exceeds the number of cells");
  ScopedPhase phase(rt.network(), Phase::kQuery);

  const auto lanes = Lanes(cells, dfg.width);
  SharedVector counts = dfg.counts.Gather(lanes);
  SharedVector lags = dfg.durations.Gather(lanes);
  // valid = 1 - [c == 0]
  SharedVector valid = AddPublic(
      ScaleByPublic(Eq(rt, counts, SharedVector(counts.size())), ~RingElem{0}),
      1);

  auto right_wins = [&rt](const Payload& l, const Payload& r) {
    const std::size_t n = l[0].size();
    const std::vector<SharedVector> lhs = {l[2], r[2], l[3]};
    const std::vector<SharedVector> rhs = {r[1], l[1], r[3]};
    const SharedVector prod =
        MulVec(rt, SharedVector::Concat(lhs), SharedVector::Concat(rhs));
    const SharedVector left_scaled = prod.Slice(0, n);   // W_l * c_r
    const SharedVector right_scaled = prod.Slice(n, n);  // W_r * c_l
    const SharedVector both_valid = prod.Slice(2 * n, n);
    const SharedBitVector better = Lt(rt, left_scaled, right_scaled);
    const SharedVector both_better = MulVec(rt, both_valid, better);
    return AddLocal(SubLocal(r[3], both_valid), both_better);
  };

  QueryResult result{"topk-bottlenecks", k, {}, 0};
  SharedVector idx = PublicIndices(cells.size());
  for (std::size_t round = 0; round < k; ++round) {
    const Payload winner =
        Tournament(rt, {idx, counts, lags, valid}, right_wins);
    const std::vector<SharedVector> shown = {winner[0], winner[1], winner[2]};
    const auto opened = rt.Open(SharedVector::Concat(shown));
    result.reveals += 3;
    const std::size_t pos = opened[0];
    if (pos >= cells.size()) throw IntegrityError("tournament index corrupt");
    result.entries.push_back(
        {cells[pos].first, cells[pos].second, opened[1], opened[2]});

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i != pos) keep.push_back(i);
    }
    cells.erase(cells.begin() + pos);
    counts = counts.Gather(keep);
    lags = lags.Gather(keep);
    valid = valid.Gather(keep);
    idx = PublicIndices(cells.size());
  }
  return result;
}

QueryResult HandoffWaitingTime(Runtime& rt, const SharedDFG& dfg,
                               const PublicMetadata& metadata, std::size_t p,
                               std::size_t q) {
  if (!HandoffDomain(metadata).Contains(p, q)) {
    throw QueryError("cell is not a hand-off between the two parties");
  }
  const auto [c, w] = RevealCell(rt, dfg, metadata, p, q);
  return {"handoff-wait", 1, {{p, q, c, w}}, 2};
}

}  // namespace mpcdfg
