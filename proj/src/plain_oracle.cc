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

#include "mpcdfg/plain_oracle.h"

#include <algorithm>
#include <map>
#include <string>
#include <tuple>

#include "mpcdfg/errors.h"

namespace mpcdfg {
namespace {

struct TaggedEvent {
  std::uint64_t timestamp;
  int party;
  std::size_t position;
  std::size_t activity;
};

void Collect(const std::vector<RawEvent>& log, const ActivityDictionary& dict,
             int party, std::map<std::string, std::vector<TaggedEvent>>& out) {
  for (std::size_t i = 0; i < log.size(); ++i) {
    const auto idx = dict.IndexOf(log[i].activity);
    if (!idx) throw Error("activity missing from dictionary: " + log[i].activity);
    out[log[i].case_id].push_back({log[i].timestamp, party, i, *idx});
  }
}

PlainDfg Accumulate(std::map<std::string, std::vector<TaggedEvent>>& cases,
                    std::size_t width) {
  PlainDfg dfg(width);
  for (auto& [id, events] : cases) {
    std::sort(events.begin(), events.end(),
              [](const TaggedEvent& x, const TaggedEvent& y) {
                return std::tie(x.timestamp, x.party, x.position) <
                       std::tie(y.timestamp, y.party, y.position);
              });
    for (std::size_t i = 1; i < events.size(); ++i) {
      const std::size_t cell =
          events[i - 1].activity * width + events[i].activity;
      dfg.counts[cell] += 1;
      dfg.durations[cell] += events[i].timestamp - events[i - 1].timestamp;
    }
  }
  return dfg;
}

void CheckWidth(const PlainDfg& dfg, const PublicMetadata& metadata) {
  if (dfg.width != metadata.global_width()) {
    throw ShapeError("DFG width does not match public metadata");
  }
}

// Best cell under `better(a, b)` ("b beats a"), scanning in index order so
// the earliest of equal cells wins.
template <typename Better>
std::size_t SelectBest(const std::vector<std::size_t>& lanes, Better better) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < lanes.size(); ++i) {
    if (better(lanes[best], lanes[i])) best = i;
  }
  return best;
}

}  // namespace

PlainDfg OracleDfg(const std::vector<RawEvent>& log_a,
                   const ActivityDictionary& dict_a,
                   const std::vector<RawEvent>& log_b,
                   const ActivityDictionary& dict_b) {
  if (dict_a.global_width() != dict_b.global_width()) {
    throw ShapeError("dictionaries disagree on width");
  }
  std::map<std::string, std::vector<TaggedEvent>> cases;
  Collect(log_a, dict_a, 0, cases);
  Collect(log_b, dict_b, 1, cases);
  return Accumulate(cases, dict_a.global_width());
}

PlainDfg OracleDfg(const std::vector<RawEvent>& log,
                   const ActivityDictionary& dict) {
  std::map<std::string, std::vector<TaggedEvent>> cases;
  Collect(log, dict, 0, cases);
  return Accumulate(cases, dict.global_width());
}

QueryResult PlainCellQuery(const PlainDfg& dfg, const PublicMetadata& metadata,
                           std::size_t p, std::size_t q) {
  CheckWidth(dfg, metadata);
  const std::size_t m = metadata.true_width();
  if (p >= m || q >= m) throw QueryError("cell index outside activity range");
  return {"cell", 1, {{p, q, dfg.count(p, q), dfg.duration(p, q)}}, 2};
}

QueryResult PlainTopkHandoffs(const PlainDfg& dfg,
                              const PublicMetadata& metadata, std::size_t k) {
  CheckWidth(dfg, metadata);
  const HandoffDomain domain(metadata);
  if (k > domain.size()) throw QueryError("k exceeds the hand-off domain");
  std::vector<std::size_t> lanes;
  for (const auto& [p, q] : domain.cells()) lanes.push_back(p * dfg.width + q);
  QueryResult result{"topk-handoffs", k, {}, 0};
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t best = SelectBest(lanes, [&](std::size_t a, std::size_t b) {
      return dfg.counts[a] < dfg.counts[b];
    });
    const std::size_t lane = lanes[best];
    result.entries.push_back(
        {lane / dfg.width, lane % dfg.width, dfg.counts[lane], std::nullopt});
    result.reveals += 2;
    lanes.erase(lanes.begin() + best);
  }
  return result;
}

QueryResult PlainTopkBottlenecks(const PlainDfg& dfg,
                                 const PublicMetadata& metadata, std::size_t k,
                                 std::uint64_t time_window) {
  CheckWidth(dfg, metadata);
  CheckMagnitudeGuard(metadata, time_window);
  std::vector<std::size_t> lanes;
  for (const auto& [p, q] : ActivityCells(metadata)) {
    lanes.push_back(p * dfg.width + q);
  }
  if (k > lanes.size()) throw QueryError("k exceeds the number of cells");
  using u128 = unsigned __int128;
  auto better = [&](std::size_t a, std::size_t b) {
    const std::uint64_t ca = dfg.counts[a], cb = dfg.counts[b];
    if (cb == 0) return false;
    if (ca == 0) return true;
    return u128{dfg.durations[b]} * ca > u128{dfg.durations[a]} * cb;
  };
  QueryResult result{"topk-bottlenecks", k, {}, 0};
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t best = SelectBest(lanes, better);
    const std::size_t lane = lanes[best];
    result.entries.push_back({lane / dfg.width, lane % dfg.width,
                              dfg.counts[lane], dfg.durations[lane]});
    result.reveals += 3;
    lanes.erase(lanes.begin() + best);
  }
  return result;
}

QueryResult PlainHandoffWaitingTime(const PlainDfg& dfg,
                                    const PublicMetadata& metadata,
                                    std::size_t p, std::size_t q) {
  if (!HandoffDomain(metadata).Contains(p, q)) {
    throw QueryError("cell is not a hand-off between the two parties");
  }
  QueryResult result = PlainCellQuery(dfg, metadata, p, q);
  result.query = "handoff-wait";
  return result;
}

}  // namespace mpcdfg
