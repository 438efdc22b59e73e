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

// Command-line driver: run the pipeline, sweep chunk counts, generate
// synthetic logs, dump the protocol cost table.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mpcdfg/errors.h"
#include "mpcdfg/event_log.h"
#include "mpcdfg/pipeline.h"
#include "mpcdfg/protocols.h"
#include "mpcdfg/synthetic.h"

namespace {

using mpcdfg::RawEvent;

struct LogFlags {
  std::string log_a;
  std::string log_b;
  std::string log;
  std::string split = "round-robin";

  void Register(CLI::App* app) {
    app->add_option("--log-a", log_a, "CSV log held by party A");
    app->add_option("--log-b", log_b, "CSV log held by party B");
    app->add_option("--log", log, "single CSV log to split between A and B");
    app->add_option("--split", split, "split strategy for --log")
        ->check(CLI::IsMember({"round-robin"}));
  }

  mpcdfg::SplitLogs Load() const {
    if (!log.empty()) {
      if (!log_a.empty() || !log_b.empty()) {
        throw CLI::ValidationError("--log excludes --log-a/--log-b");
      }
      return mpcdfg::SplitRoundRobin(mpcdfg::ReadCsvFile(log));
    }
    if (log_a.empty() || log_b.empty()) {
      throw CLI::ValidationError("need --log or both --log-a and --log-b");
    }
    return {mpcdfg::ReadCsvFile(log_a), mpcdfg::ReadCsvFile(log_b)};
  }

  std::string Name() const {
    if (!log.empty()) return log;
    return log_a + "+" + log_b;
  }
};

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw mpcdfg::Error("cannot write " + path);
  out << text;
}

// Activity given either as a global index or by name.
std::size_t ResolveActivity(const std::string& text,
                            const mpcdfg::SplitLogs& logs) {
  std::size_t index = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), index);
  if (ec == std::errc() && ptr == text.data() + text.size()) return index;
  const auto names_a = mpcdfg::DistinctActivities(logs.a);
  const auto names_b = mpcdfg::DistinctActivities(logs.b);
  for (std::size_t i = 0; i < names_a.size(); ++i) {
    if (names_a[i] == text) return i;
  }
  for (std::size_t i = 0; i < names_b.size(); ++i) {
    if (names_b[i] == text) return names_a.size() + i;
  }
  throw mpcdfg::QueryError("unknown activity: " + text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure directly-follows graph mining over two event logs"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run the pipeline once");
  LogFlags run_logs;
  run_logs.Register(run);
  mpcdfg::PipelineOptions options;
  std::string backend = "secure";
  std::string query;
  std::size_t k = 1;
  std::string from, to;
  std::string report_path, dfg_path;
  run->add_option("--chunks", options.chunks, "number of trace chunks")
      ->check(CLI::PositiveNumber);
  run->add_option("--pad-activities", options.pad_activities,
                  "decoy activity columns");
  run->add_option("--backend", backend)
      ->check(CLI::IsMember({"secure", "clear"}));
  run->add_option("--query", query)->check(CLI::IsMember(
      {"topk-handoffs", "topk-bottlenecks", "cell", "handoff-wait"}));
  run->add_option("--k", k, "number of results for top-k queries");
  run->add_option("--from", from, "source activity (index or name)");
  run->add_option("--to", to, "target activity (index or name)");
  run->add_option("--seed", options.seed, "correlated randomness seed");
  run->add_option("--time-window", options.time_window,
                  "public upper bound on timestamps (seconds)");
  run->add_option("--report", report_path, "write the bench report JSON");
  run->add_flag("--unsafe-reveal-dfg", options.reveal_dfg,
                "reconstruct and print the whole DFG (testing only)");
  run->add_option("--dfg-out", dfg_path, "file for --unsafe-reveal-dfg");

  // bench
  auto* bench = app.add_subcommand("bench", "sweep chunk counts");
  LogFlags bench_logs;
  bench_logs.Register(bench);
  std::vector<std::size_t> chunk_counts = {1, 2, 4, 8, 16};
  std::size_t repetitions = 5;
  std::string bench_backend = "secure";
  std::uint64_t bench_seed = 1;
  std::string csv_path;
  bench->add_option("--chunks", chunk_counts, "chunk counts to sweep")
      ->delimiter(',');
  bench->add_option("--repetitions", repetitions)->check(CLI::PositiveNumber);
  bench->add_option("--backend", bench_backend)
      ->check(CLI::IsMember({"secure", "clear"}));
  bench->add_option("--seed", bench_seed);
  bench->add_option("--csv", csv_path, "write the sweep CSV here");

  // generate
  auto* generate = app.add_subcommand("generate", "write a synthetic log");
  mpcdfg::SyntheticOptions synth;
  std::string generate_out;
  generate->add_option("--traces", synth.traces);
  generate->add_option("--min-length", synth.min_length);
  generate->add_option("--max-length", synth.max_length);
  generate->add_option("--activities", synth.activities);
  generate->add_option("--max-gap", synth.max_gap);
  generate->add_option("--seed", synth.seed);
  generate->add_option("--out", generate_out)->required();

  // cost-table
  auto* costs = app.add_subcommand("cost-table", "dump per-primitive costs");
  std::string cost_out;
  costs->add_option("--out", cost_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto logs = run_logs.Load();
      options.backend = mpcdfg::ParseBackend(backend);
      options.log_name = run_logs.Name();
      if (!query.empty()) {
        mpcdfg::QuerySpec spec;
        spec.kind = mpcdfg::ParseQuery(query);
        spec.k = k;
        if (spec.kind == mpcdfg::QueryKind::kCell ||
            spec.kind == mpcdfg::QueryKind::kHandoffWait) {
          if (from.empty() || to.empty()) {
            throw CLI::ValidationError("--from and --to are required");
          }
          spec.from = ResolveActivity(from, logs);
          spec.to = ResolveActivity(to, logs);
        }
        options.query = spec;
      }
      const auto out = mpcdfg::RunPipeline(logs.a, logs.b, options);
      if (out.query) std::cout << out.query->ToJson().dump(2) << "\n";
      if (!report_path.empty()) {
        nlohmann::json report = out.report.ToJson();
        report["metadata"] = out.metadata.ToJson();
        report["dictionary_a"] = out.dict_a.ToJson();
        report["dictionary_b"] = out.dict_b.ToJson();
        WriteFile(report_path, report.dump(2) + "\n");
      }
      if (out.dfg) {
        const std::string dump = out.dfg->ToJson().dump() + "\n";
        if (dfg_path.empty()) {
          std::cout << dump;
        } else {
          WriteFile(dfg_path, dump);
        }
      }
    } else if (*bench) {
      const auto logs = bench_logs.Load();
      mpcdfg::PipelineOptions bench_options;
      bench_options.backend = mpcdfg::ParseBackend(bench_backend);
      bench_options.seed = bench_seed;
      bench_options.log_name = bench_logs.Name();
      const auto reports = mpcdfg::BenchSweep(logs.a, logs.b, chunk_counts,
                                              repetitions, bench_options);
      const std::string csv = mpcdfg::BenchCsv(reports);
      if (csv_path.empty()) {
        std::cout << csv;
      } else {
        WriteFile(csv_path, csv);
      }
    } else if (*generate) {
      WriteFile(generate_out, mpcdfg::WriteCsv(mpcdfg::GenerateLog(synth)));
    } else if (*costs) {
      const std::string json = mpcdfg::CostTableJson().dump(2) + "\n";
      if (cost_out.empty()) {
        std::cout << json;
      } else {
        WriteFile(cost_out, json);
      }
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
