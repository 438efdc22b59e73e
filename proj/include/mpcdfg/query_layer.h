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

#ifndef MPCDFG_QUERY_LAYER_H_
#define MPCDFG_QUERY_LAYER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpcdfg/dfg_engine.h"
#include "mpcdfg/event_log.h"
#include "mpcdfg/runtime.h"

namespace mpcdfg {

// Width of the public time window [origin, origin + window) every input
// timestamp must fall into. Bounds the summed lag of any trace.
inline constexpr std::uint64_t kDefaultTimeWindow = std::uint64_t{1} << 32;

struct QueryEntry {
  std::size_t from = 0;
  std::size_t to = 0;
  std::optional<std::uint64_t> count;
  std::optional<std::uint64_t> total_seconds;

  std::optional<double> mean_seconds() const;
  bool operator==(const QueryEntry&) const = default;
};

struct QueryResult {
  std::string query;
  std::size_t k = 0;
  std::vector<QueryEntry> entries;
  std::uint64_t reveals = 0;

  // {query, k, results: [{from, to, count, total_seconds, mean_seconds}],
  //  reveals}; unrevealed fields are null.
  nlohmann::json ToJson() const;
  bool operator==(const QueryResult&) const = default;
};

// Cells whose endpoints lie in different parties' index ranges, in
// linearized order.
class HandoffDomain {
 public:
  explicit HandoffDomain(const PublicMetadata& metadata);

  const std::vector<std::pair<std::size_t, std::size_t>>& cells() const {
    return cells_;
  }
  std::size_t size() const { return cells_.size(); }
  bool Contains(std::size_t p, std::size_t q) const;

 private:
  std::size_t m_a_;
  std::size_t m_b_;
  std::vector<std::pair<std::size_t, std::size_t>> cells_;
};

// Non-decoy cells in linearized order.
std::vector<std::pair<std::size_t, std::size_t>> ActivityCells(
    const PublicMetadata& metadata);

// Throws QueryError unless every product Δ·c of a bottleneck comparison is
// guaranteed to stay below 2^63.
void CheckMagnitudeGuard(const PublicMetadata& metadata,
                         std::uint64_t time_window);

// Opens (G[p][q], W[p][q]).
std::pair<std::uint64_t, std::uint64_t> RevealCell(
    Runtime& rt, const SharedDFG& dfg, const PublicMetadata& metadata,
    std::size_t p, std::size_t q);

QueryResult CellQuery(Runtime& rt, const SharedDFG& dfg,
                      const PublicMetadata& metadata, std::size_t p,
                      std::size_t q);

// k hand-off cells with the largest count; ties go to the smaller index.
QueryResult TopkHandoffs(Runtime& rt, const SharedDFG& dfg,
                         const PublicMetadata& metadata, std::size_t k);

// k cells with the largest mean lag W/c, compared as W_r·c_l > W_l·c_r.
// Unobserved cells rank last.
QueryResult TopkBottlenecks(Runtime& rt, const SharedDFG& dfg,
                            const PublicMetadata& metadata, std::size_t k,
                            std::uint64_t time_window = kDefaultTimeWindow);

// Mean lag of one hand-off cell; an unobserved cell yields an entry with
// count 0 and no mean.
QueryResult HandoffWaitingTime(Runtime& rt, const SharedDFG& dfg,
                               const PublicMetadata& metadata, std::size_t p,
                               std::size_t q);

}  // namespace mpcdfg

#endif  // MPCDFG_QUERY_LAYER_H_
