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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"
#include "mpcdfg/errors.h"
#include "mpcdfg/plain_oracle.h"
#include "mpcdfg/synthetic.h"

namespace mpcdfg {
namespace {

std::vector<std::string> Activities(const std::vector<RawEvent>& log) {
  return DistinctActivities(log);
}

TEST(SplitTest, Alternates) {
  const std::vector<RawEvent> log = {
      {"c", "D", 1}, {"c", "A", 2}, {"c", "C", 3}, {"c", "B", 4}, {"c", "A", 5}};
  const auto split = SplitRoundRobin(log);
  EXPECT_EQ(Activities(split.a), (std::vector<std::string>{"A", "C"}));
  EXPECT_EQ(Activities(split.b), (std::vector<std::string>{"B", "D"}));
  EXPECT_EQ(split.a.size() + split.b.size(), log.size());
  EXPECT_EQ(split.a[0].timestamp, 2u);  // file order kept
}

TEST(SplitTest, SingleActivity) {
  const auto split = SplitRoundRobin({{"c", "A", 1}, {"d", "A", 2}});
  EXPECT_EQ(split.a.size(), 2u);
  EXPECT_TRUE(split.b.empty());
}

SplitLogs Fixture(std::uint64_t seed = 4, std::size_t traces = 24) {
  SyntheticOptions opt;
  opt.traces = traces;
  opt.max_length = 7;
  opt.activities = 6;
  opt.max_gap = 20;
  opt.seed = seed;
  return SplitRoundRobin(GenerateLog(opt));
}

TEST(RunPipelineTest, SecureAndClearGiveIdenticalJson) {
  const auto logs = Fixture();
  const std::vector<QuerySpec> queries = {
      {QueryKind::kTopkHandoffs, 5},
      {QueryKind::kTopkBottlenecks, 5},
      {QueryKind::kCell, 1, 0, 3},
      {QueryKind::kHandoffWait, 1, 4, 1},
  };
  for (const auto& q : queries) {
    PipelineOptions opt;
    opt.query = q;
    opt.chunks = 2;
    opt.reveal_dfg = true;
    const auto secure = RunPipeline(logs.a, logs.b, opt);
    opt.backend = Backend::kClear;
    const auto clear = RunPipeline(logs.a, logs.b, opt);
    EXPECT_EQ(secure.query->ToJson().dump(), clear.query->ToJson().dump())
        << QueryName(q.kind);
    EXPECT_EQ(secure.dfg, clear.dfg);
    EXPECT_EQ(clear.report.traffic.total_bytes(), 0u);
  }
}

TEST(RunPipelineTest, ChunkCountChangesCostNotAnswers) {
  const auto logs = Fixture(8);
  PipelineOptions opt;
  opt.query = QuerySpec{QueryKind::kTopkBottlenecks, 4};
  opt.chunks = 1;
  const auto one = RunPipeline(logs.a, logs.b, opt);
  opt.chunks = 8;
  const auto eight = RunPipeline(logs.a, logs.b, opt);
  EXPECT_EQ(one.query->ToJson().dump(), eight.query->ToJson().dump());
  EXPECT_NE(one.report.traffic, eight.report.traffic);
}

TEST(RunPipelineTest, SortBytesDecreaseWithChunks) {
  const auto log = GenerateShapedLog(64, 300, 1, 12, 6, 3);
  const auto split = SplitRoundRobin(log);
  std::uint64_t previous = ~0ull;
  for (std::size_t chunks : {1u, 2u, 4u, 8u, 16u}) {
    PipelineOptions opt;
    opt.chunks = chunks;
    const auto out = RunPipeline(split.a, split.b, opt);
    const auto bytes = out.report.traffic.phase_bytes(Phase::kSort);
    EXPECT_LT(bytes, previous) << "chunks=" << chunks;
    previous = bytes;
  }
}

TEST(RunPipelineTest, ReportIsConsistentWithLedger) {
  const auto logs = Fixture(9);
  PipelineOptions opt;
  opt.chunks = 3;
  opt.query = QuerySpec{QueryKind::kTopkHandoffs, 2};
  const auto out = RunPipeline(logs.a, logs.b, opt);
  const auto& r = out.report;
  EXPECT_EQ(r.events, logs.a.size() + logs.b.size());
  EXPECT_DOUBLE_EQ(r.throughput(), r.events / r.total_seconds);
  const auto json = r.ToJson();
  std::uint64_t per_party_total = 0;
  for (const auto& [phase, parties] : json["bytes_sent_per_party"].items()) {
    for (const auto& b : parties) per_party_total += b.get<std::uint64_t>();
  }
  EXPECT_EQ(per_party_total, r.traffic.total_bytes());
  EXPECT_EQ(json["traffic"]["total_bytes"], r.traffic.total_bytes());
  EXPECT_EQ(json["chunks"], 3);
  EXPECT_EQ(json["backend"], "secure");
  EXPECT_EQ(out.stats.chunk_count, 3u);
  EXPECT_GT(r.traffic.phase_bytes(Phase::kSetup), 0u);
  EXPECT_GT(r.traffic.phase_bytes(Phase::kQuery), 0u);
}

TEST(RunPipelineTest, DecoyColumnsStayZero) {
  const auto logs = Fixture(10);
  PipelineOptions opt;
  opt.pad_activities = 3;
  opt.reveal_dfg = true;
  const auto out = RunPipeline(logs.a, logs.b, opt);
  const std::size_t m = out.metadata.true_width();
  ASSERT_EQ(out.dfg->width, m + 3);
  for (std::size_t p = 0; p < m + 3; ++p) {
    for (std::size_t q = m; q < m + 3; ++q) {
      EXPECT_EQ(out.dfg->count(p, q), 0u);
      EXPECT_EQ(out.dfg->count(q, p), 0u);
    }
  }
  const auto oracle =
      OracleDfg(logs.a, out.dict_a, logs.b, out.dict_b);
  EXPECT_EQ(*out.dfg, oracle);
}

TEST(RunPipelineTest, Errors) {
  PipelineOptions opt;
  EXPECT_THROW(RunPipeline({}, {}, opt), Error);
  opt.time_window = 50;
  EXPECT_THROW(RunPipeline({{"c", "A", 60}}, {{"c", "B", 1}}, opt), RangeError);
}

TEST(BenchSweepTest, DeterministicTrafficAndCsv) {
  const auto logs = Fixture(12, 10);
  PipelineOptions opt;
  const auto reports = BenchSweep(logs.a, logs.b, {1, 2}, 3, opt);
  ASSERT_EQ(reports.size(), 2u);
  opt.chunks = 2;
  EXPECT_EQ(reports[1].traffic, RunPipeline(logs.a, logs.b, opt).report.traffic);
  EXPECT_EQ(reports[0].repetitions, 3u);
  double phases = 0;
  for (double s : reports[0].phase_seconds) phases += s;
  EXPECT_LE(phases, reports[0].total_seconds * 1.0001);

  std::istringstream csv(BenchCsv(reports));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("log,backend,chunks,repetitions,events,", 0), 0u);
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 2);
  EXPECT_THROW(BenchSweep(logs.a, logs.b, {1}, 0, opt), RangeError);
}

TEST(NamesTest, ParseRoundTrip) {
  for (auto kind : {QueryKind::kTopkHandoffs, QueryKind::kTopkBottlenecks,
                    QueryKind::kCell, QueryKind::kHandoffWait}) {
    EXPECT_EQ(ParseQuery(QueryName(kind)), kind);
  }
  EXPECT_EQ(ParseBackend("clear"), Backend::kClear);
  EXPECT_THROW(ParseBackend("fast"), Error);
  EXPECT_THROW(ParseQuery("all"), QueryError);
}

// Runs the CLI and returns (exit status, stdout).
std::pair<int, std::string> Cli(const std::string& args) {
  const std::string cmd = std::string(MPCDFG_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("mpcdfg_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(CliTest, BackendsAgree) {
  const auto [gen_status, gen_out] =
      Cli("generate --traces 15 --max-length 5 --activities 4 --seed 3 --out " +
          Path("log.csv"));
  ASSERT_EQ(gen_status, 0);
  const std::string common = "run --log " + Path("log.csv") +
                             " --query topk-bottlenecks --k 3 --chunks 2";
  const auto [s_status, secure] = Cli(common + " --backend secure --report " +
                                      Path("report.json"));
  const auto [c_status, clear] = Cli(common + " --backend clear");
  ASSERT_EQ(s_status, 0);
  ASSERT_EQ(c_status, 0);
  EXPECT_EQ(secure, clear);
  const auto query = nlohmann::json::parse(secure);
  EXPECT_EQ(query["reveals"], 9);
  std::ifstream report_file(Path("report.json"));
  const auto report = nlohmann::json::parse(report_file);
  EXPECT_EQ(report["metadata"]["chunk_count"], 2);
  EXPECT_GT(report["traffic"]["total_bytes"].get<std::uint64_t>(), 0u);
}

TEST_F(CliTest, NamedCellAndDfgDump) {
  std::ofstream(Path("a.csv")) << "case_id,activity,timestamp\nc,Order,10\n";
  std::ofstream(Path("b.csv")) << "case_id,activity,timestamp\nc,Deliver,25\n";
  const auto [status, out] =
      Cli("run --log-a " + Path("a.csv") + " --log-b " + Path("b.csv") +
          " --query handoff-wait --from Order --to Deliver --unsafe-reveal-dfg"
          " --dfg-out " + Path("dfg.json"));
  ASSERT_EQ(status, 0);
  const auto query = nlohmann::json::parse(out);
  EXPECT_EQ(query["results"][0]["mean_seconds"], 15.0);
  std::ifstream dfg_file(Path("dfg.json"));
  const auto dfg = nlohmann::json::parse(dfg_file);
  EXPECT_EQ(dfg["G"][0][1], 1);
  EXPECT_EQ(dfg["W"][0][1], 15);
}

TEST_F(CliTest, BenchWritesCsv) {
  Cli("generate --traces 6 --max-length 3 --activities 3 --out " + Path("l.csv"));
  const auto [status, out] = Cli("bench --log " + Path("l.csv") +
                                 " --chunks 1,2 --repetitions 2 --csv " +
                                 Path("s.csv"));
  ASSERT_EQ(status, 0);
  std::ifstream csv(Path("s.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST_F(CliTest, CostTableAndErrors) {
  const auto [status, out] = Cli("cost-table");
  ASSERT_EQ(status, 0);
  EXPECT_EQ(nlohmann::json::parse(out)["mul_vec"]["bytes_per_party_per_lane"], 8);
  EXPECT_NE(Cli("run --log " + Path("nope.csv")).first, 0);
  EXPECT_NE(Cli("run --log-a " + Path("nope.csv")).first, 0);
  EXPECT_NE(Cli("frobnicate").first, 0);
}

}  // namespace
}  // namespace mpcdfg
