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

#include "mpcdfg/pipeline.h"

#include <chrono>
#include <set>
#include <sstream>
#include <string>

#include "mpcdfg/errors.h"
#include "mpcdfg/plain_oracle.h"
#include "mpcdfg/runtime.h"

namespace mpcdfg {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

void CheckWindow(const std::vector<RawEvent>& log, std::uint64_t window) {
  for (const auto& e : log) {
    if (e.timestamp >= window) {
      throw RangeError("timestamp outside the public time window: " +
                       std::to_string(e.timestamp));
    }
  }
}

QueryResult SecureQuery(Runtime& rt, const SharedDFG& dfg,
                        const PublicMetadata& md, const QuerySpec& q,
                        std::uint64_t window) {
  switch (q.kind) {
    case QueryKind::kTopkHandoffs:
      return TopkHandoffs(rt, dfg, md, q.k);
    case QueryKind::kTopkBottlenecks:
      return TopkBottlenecks(rt, dfg, md, q.k, window);
    case QueryKind::kCell:
      return CellQuery(rt, dfg, md, q.from, q.to);
    case QueryKind::kHandoffWait:
      return HandoffWaitingTime(rt, dfg, md, q.from, q.to);
  }
  throw QueryError("unknown query");
}

QueryResult ClearQuery(const PlainDfg& dfg, const PublicMetadata& md,
                       const QuerySpec& q, std::uint64_t window) {
  switch (q.kind) {
    case QueryKind::kTopkHandoffs:
      return PlainTopkHandoffs(dfg, md, q.k);
    case QueryKind::kTopkBottlenecks:
      return PlainTopkBottlenecks(dfg, md, q.k, window);
    case QueryKind::kCell:
      return PlainCellQuery(dfg, md, q.from, q.to);
    case QueryKind::kHandoffWait:
      return PlainHandoffWaitingTime(dfg, md, q.from, q.to);
  }
  throw QueryError("unknown query");
}

}  // namespace

SplitLogs SplitRoundRobin(const std::vector<RawEvent>& log) {
  const std::vector<std::string> names = DistinctActivities(log);
  std::set<std::string> to_a;
  for (std::size_t i = 0; i < names.size(); i += 2) to_a.insert(names[i]);
  SplitLogs out;
  for (const auto& e : log) {
    (to_a.count(e.activity) ? out.a : out.b).push_back(e);
  }
  return out;
}

std::string_view BackendName(Backend backend) {
  return backend == Backend::kSecure ? "secure" : "clear";
}

Backend ParseBackend(std::string_view name) {
  if (name == "secure") return Backend::kSecure;
  if (name == "clear") return Backend::kClear;
  throw Error("unknown backend: " + std::string(name));
}

std::string_view QueryName(QueryKind kind) {
  switch (kind) {
    case QueryKind::kTopkHandoffs:
      return "topk-handoffs";
    case QueryKind::kTopkBottlenecks:
      return "topk-bottlenecks";
    case QueryKind::kCell:
      return "cell";
    case QueryKind::kHandoffWait:
      return "handoff-wait";
  }
  return "?";
}

QueryKind ParseQuery(std::string_view name) {
  for (QueryKind kind : {QueryKind::kTopkHandoffs, QueryKind::kTopkBottlenecks,
                         QueryKind::kCell, QueryKind::kHandoffWait}) {
    if (QueryName(kind) == name) return kind;
  }
  throw QueryError("unknown query: " + std::string(name));
}

nlohmann::json BenchReport::ToJson() const {
  nlohmann::json wall = {{"total", total_seconds}};
  nlohmann::json per_party = nlohmann::json::object();
  for (Phase phase : kAllPhases) {
    wall[std::string(PhaseName(phase))] = seconds(phase);
    per_party[std::string(PhaseName(phase))] = {
        traffic.phase_bytes_sent(phase, PartyId(0)),
        traffic.phase_bytes_sent(phase, PartyId(1)),
        traffic.phase_bytes_sent(phase, PartyId(2))};
  }
  return {{"log", log_name},
          {"backend", BackendName(backend)},
          {"chunks", chunk_count},
          {"repetitions", repetitions},
          {"events", events},
          {"wall_seconds", wall},
          {"events_per_second", throughput()},
          {"bytes_sent_per_party", per_party},
          {"traffic", traffic.ToJson()}};
}

PipelineOutput RunPipeline(const std::vector<RawEvent>& log_a,
                           const std::vector<RawEvent>& log_b,
                           const PipelineOptions& options) {
  if (log_a.empty() && log_b.empty()) throw Error("both logs are empty");
  const auto start = Clock::now();
  PipelineOutput out;
  auto& report = out.report;
  report.log_name = options.log_name;
  report.backend = options.backend;
  report.chunk_count = options.chunks;
  report.events = log_a.size() + log_b.size();

  // Local preprocessing and metadata agreement.
  auto phase_start = Clock::now();
  CheckWindow(log_a, options.time_window);
  CheckWindow(log_b, options.time_window);
  const CaseIndex cases = CaseIndex::Union(log_a, log_b);
  auto acts_a = DistinctActivities(log_a);
  auto acts_b = DistinctActivities(log_b);
  const LocalStatistics stats_a{acts_a.size(), MaxTraceLength(log_a),
                                cases.size()};
  const LocalStatistics stats_b{acts_b.size(), MaxTraceLength(log_b),
                                cases.size()};

  std::optional<Runtime> rt;
  if (options.backend == Backend::kSecure) {
    rt.emplace(options.seed);
    out.metadata = AgreeMetadata(*rt, stats_a, stats_b, options.pad_activities,
                                 options.chunks);
  } else {
    out.metadata = PublicMetadata::Agree(stats_a, stats_b,
                                         options.pad_activities, options.chunks);
  }
  const PublicMetadata& md = out.metadata;
  out.dict_a = BuildDictionary(std::move(acts_a), 0, md.global_width());
  out.dict_b = BuildDictionary(std::move(acts_b), md.m_a, md.global_width());

  if (options.backend == Backend::kSecure) {
    const std::size_t len = md.max_trace_length + options.extra_trace_length;
    const PreparedLog prep_a = Prepare(log_a, out.dict_a, cases, len);
    const PreparedLog prep_b = Prepare(log_b, out.dict_b, cases, len);
    report.phase_seconds[static_cast<int>(Phase::kSetup)] =
        SecondsSince(phase_start);

    const SharedDFG dfg = BuildDfg(*rt, prep_a, prep_b, md.chunk_count, &out.stats);
    report.phase_seconds[static_cast<int>(Phase::kInput)] =
        out.stats.input_seconds;
    report.phase_seconds[static_cast<int>(Phase::kSort)] =
        out.stats.sort_seconds;
    report.phase_seconds[static_cast<int>(Phase::kDfg)] = out.stats.dfg_seconds;

    phase_start = Clock::now();
    if (options.query) {
      out.query = SecureQuery(*rt, dfg, md, *options.query, options.time_window);
    }
    report.phase_seconds[static_cast<int>(Phase::kQuery)] =
        SecondsSince(phase_start);
    if (options.reveal_dfg) out.dfg = UnsafeRevealDfg(dfg);
    report.traffic = rt->network().SnapshotLedger();
  } else {
    report.phase_seconds[static_cast<int>(Phase::kSetup)] =
        SecondsSince(phase_start);
    phase_start = Clock::now();
    PlainDfg dfg = OracleDfg(log_a, out.dict_a, log_b, out.dict_b);
    report.phase_seconds[static_cast<int>(Phase::kDfg)] =
        SecondsSince(phase_start);
    phase_start = Clock::now();
    if (options.query) {
      out.query = ClearQuery(dfg, md, *options.query, options.time_window);
    }
    report.phase_seconds[static_cast<int>(Phase::kQuery)] =
        SecondsSince(phase_start);
    if (options.reveal_dfg) out.dfg = std::move(dfg);
  }
  report.total_seconds = SecondsSince(start);
  return out;
}

std::vector<BenchReport> BenchSweep(const std::vector<RawEvent>& log_a,
                                    const std::vector<RawEvent>& log_b,
                                    const std::vector<std::size_t>& chunk_counts,
                                    std::size_t repetitions,
                                    PipelineOptions options) {
  if (repetitions == 0) throw RangeError("repetitions must be at least 1");
  std::vector<BenchReport> out;
  for (std::size_t chunks : chunk_counts) {
    options.chunks = chunks;
    BenchReport mean;
    for (std::size_t r = 0; r < repetitions; ++r) {
      const BenchReport run = RunPipeline(log_a, log_b, options).report;
      if (r == 0) {
        mean = run;
        continue;
      }
      if (!(run.traffic == mean.traffic)) {
        throw IntegrityError("traffic differs between repetitions");
      }
      mean.total_seconds += run.total_seconds;
      for (int p = 0; p < kNumPhases; ++p) {
        mean.phase_seconds[p] += run.phase_seconds[p];
      }
    }
    const double n = static_cast<double>(repetitions);
    mean.total_seconds /= n;
    for (auto& s : mean.phase_seconds) s /= n;
    mean.repetitions = repetitions;
    out.push_back(std::move(mean));
  }
  return out;
}

std::string BenchCsv(const std::vector<BenchReport>& reports) {
  std::ostringstream csv;
  csv << "log,backend,chunks,repetitions,events,total_seconds,sort_seconds,"
         "dfg_seconds,events_per_second,sort_bytes,dfg_bytes,total_bytes,"
         "bytes_party0,bytes_party1,bytes_party2,sort_rounds,dfg_rounds,"
         "total_rounds\n";
  for (const auto& r : reports) {
    const auto& t = r.traffic;
    csv << r.log_name << ',' << BackendName(r.backend) << ',' << r.chunk_count
        << ',' << r.repetitions << ',' << r.events << ',' << r.total_seconds
        << ',' << r.seconds(Phase::kSort) << ',' << r.seconds(Phase::kDfg)
        << ',' << r.throughput() << ',' << t.phase_bytes(Phase::kSort) << ','
        << t.phase_bytes(Phase::kDfg) << ',' << t.total_bytes() << ','
        << t.bytes_sent(PartyId(0)) << ',' << t.bytes_sent(PartyId(1)) << ','
        << t.bytes_sent(PartyId(2)) << ',' << t.phase_rounds(Phase::kSort)
        << ',' << t.phase_rounds(Phase::kDfg) << ',' << t.round_count()
        << '\n';
  }
  return csv.str();
}

}  // namespace mpcdfg
