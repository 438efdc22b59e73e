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

#ifndef MPCDFG_PIPELINE_H_
#define MPCDFG_PIPELINE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpcdfg/dfg_engine.h"
#include "mpcdfg/event_log.h"
#include "mpcdfg/network_sim.h"
#include "mpcdfg/query_layer.h"

namespace mpcdfg {

struct SplitLogs {
  std::vector<RawEvent> a;
  std::vector<RawEvent> b;
};

// Distinct activities sorted by name go alternately to A and B.
SplitLogs SplitRoundRobin(const std::vector<RawEvent>& log);

enum class Backend { kSecure, kClear };
std::string_view BackendName(Backend backend);
Backend ParseBackend(std::string_view name);

enum class QueryKind { kTopkHandoffs, kTopkBottlenecks, kCell, kHandoffWait };
std::string_view QueryName(QueryKind kind);
QueryKind ParseQuery(std::string_view name);

struct QuerySpec {
  QueryKind kind = QueryKind::kTopkHandoffs;
  std::size_t k = 1;
  std::size_t from = 0;
  std::size_t to = 0;
};

struct PipelineOptions {
  Backend backend = Backend::kSecure;
  std::size_t chunks = 1;
  std::size_t pad_activities = 0;
  // Extra dummy rows per trace on top of the agreed maximum trace length.
  std::size_t extra_trace_length = 0;
  std::uint64_t seed = 1;
  std::uint64_t time_window = kDefaultTimeWindow;
  std::optional<QuerySpec> query;
  bool reveal_dfg = false;
  std::string log_name = "log";
};

struct BenchReport {
  std::string log_name;
  Backend backend = Backend::kSecure;
  std::size_t chunk_count = 1;
  std::size_t repetitions = 1;
  std::uint64_t events = 0;
  // Wall-clock seconds per phase.
  std::array<double, kNumPhases> phase_seconds{};
  double total_seconds = 0;
  TrafficLedger traffic;

  double throughput() const {
    return total_seconds > 0 ? static_cast<double>(events) / total_seconds : 0;
  }
  double seconds(Phase phase) const {
    return phase_seconds[static_cast<int>(phase)];
  }

  nlohmann::json ToJson() const;
};

struct PipelineOutput {
  PublicMetadata metadata;
  ActivityDictionary dict_a;
  ActivityDictionary dict_b;
  BuildStats stats;
  std::optional<QueryResult> query;
  std::optional<PlainDfg> dfg;
  BenchReport report;
};

// Preprocess, share, combine, sort, build the DFG and answer the query.
PipelineOutput RunPipeline(const std::vector<RawEvent>& log_a,
                           const std::vector<RawEvent>& log_b,
                           const PipelineOptions& options);

// One averaged report per chunk count. Traffic must be identical across
// repetitions.
std::vector<BenchReport> BenchSweep(const std::vector<RawEvent>& log_a,
                                    const std::vector<RawEvent>& log_b,
                                    const std::vector<std::size_t>& chunk_counts,
                                    std::size_t repetitions,
                                    PipelineOptions options);

// Columns: log,backend,chunks,repetitions,events,total_seconds,sort_seconds,
// dfg_seconds,events_per_second,sort_bytes,dfg_bytes,total_bytes,
// bytes_party0,bytes_party1,bytes_party2,sort_rounds,dfg_rounds,total_rounds
std::string BenchCsv(const std::vector<BenchReport>& reports);

}  // namespace mpcdfg

#endif  // MPCDFG_PIPELINE_H_
