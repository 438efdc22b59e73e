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

#include "mpcdfg/event_log.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "gtest/gtest.h"
#include "mpcdfg/errors.h"
#include "mpcdfg/pipeline.h"

namespace mpcdfg {
namespace {

constexpr char kHeader[] = "case_id,activity,timestamp\n";

std::vector<RawEvent> Parse(const std::string& body) {
  return ParseCsv(std::string(kHeader) + body);
}

std::size_t ParseErrorLine(const std::string& text) {
  try {
    ParseCsv(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

TEST(ParseCsvTest, TwoRows) {
  EXPECT_EQ(Parse("c1,A,100\nc1,B,160"),
            (std::vector<RawEvent>{{"c1", "A", 100}, {"c1", "B", 160}}));
}

TEST(ParseCsvTest, HeaderOnly) { EXPECT_TRUE(Parse("").empty()); }

TEST(ParseCsvTest, MissingHeader) {
  EXPECT_EQ(ParseErrorLine(""), 1u);
  EXPECT_EQ(ParseErrorLine("case,activity,time\nc1,A,1\n"), 1u);
}

TEST(ParseCsvTest, MalformedRowNamesLine) {
  EXPECT_EQ(ParseErrorLine(std::string(kHeader) + "c1,A,1\nc1,B\n"), 3u);
  EXPECT_EQ(ParseErrorLine(std::string(kHeader) + "c1,A,yesterday\n"), 2u);
  EXPECT_EQ(ParseErrorLine(std::string(kHeader) + ",A,1\n"), 2u);
  EXPECT_EQ(ParseErrorLine(std::string(kHeader) + "c1,\"A,1\n"), 2u);
}

TEST(ParseCsvTest, TimestampRange) {
  EXPECT_THROW(Parse("c1,A,4611686018427387904\n"), RangeError);
  EXPECT_EQ(Parse("c1,A,4611686018427387903\n")[0].timestamp,
            4611686018427387903u);
  EXPECT_THROW(Parse("c1,A,99999999999999999999999\n"), RangeError);
  EXPECT_THROW(Parse("c1,A,1969-12-31T23:59:59Z\n"), RangeError);
}

TEST(ParseCsvTest, ColumnsByNameQuotesAndBom) {
  const auto events = ParseCsv(
      "\xEF\xBB\xBFtimestamp,extra,activity,case_id\r\n"
      "5,x,\"say \"\"hi\"\"\",k1\r\n"
      "\n"
      "6,y, B ,k2\r\n");
  EXPECT_EQ(events, (std::vector<RawEvent>{{"k1", "say \"hi\"", 5},
                                           {"k2", "B", 6}}));
}

TEST(ParseCsvTest, FixtureFile) {
  const auto events = ReadCsvFile(MPCDFG_FIXTURE_DIR "/small_log.csv");
  EXPECT_EQ(events, (std::vector<RawEvent>{
                        {"c1", "Register", 1364803200},
                        {"c1", "Check, basic", 1364803200},
                        {"c2", "Register", 1364803260},
                        {"c1", "Decide", 1364808600},
                        {"c2", "Decide", 1364803500},
                    }));
  EXPECT_THROW(ReadCsvFile(MPCDFG_FIXTURE_DIR "/missing.csv"), Error);
}

TEST(ParseCsvTest, WriteCsvRoundTrip) {
  const std::vector<RawEvent> events = {{"a,b", "x\"y", 3}, {"c", "d", 0}};
  EXPECT_EQ(ParseCsv(WriteCsv(events)), events);
}

TEST(Iso8601Test, Forms) {
  EXPECT_EQ(ParseIso8601("1970-01-01T00:00:00Z"), 0);
  EXPECT_EQ(ParseIso8601("2000-01-01"), 946684800);
  EXPECT_EQ(ParseIso8601("2012-02-29T23:59:59"), 1330559999);
  EXPECT_EQ(ParseIso8601("2013-04-01T10:00:00+02:00"), 1364803200);
  EXPECT_EQ(ParseIso8601("2013-04-01T06:30:00-0130"), 1364803200);
  EXPECT_EQ(ParseIso8601("2013-04-01T08:00:00.999Z"), 1364803200);
  EXPECT_FALSE(ParseIso8601("2013-13-01"));
  EXPECT_FALSE(ParseIso8601("2013-04-01X"));
  EXPECT_FALSE(ParseIso8601("01/04/2013"));
}

TEST(DictionaryTest, SortedConsecutiveIndices) {
  const auto a = BuildDictionary({"B", "A"}, 0, 4);
  EXPECT_EQ(a.IndexOf("A"), 0u);
  EXPECT_EQ(a.IndexOf("B"), 1u);
  EXPECT_FALSE(a.IndexOf("C"));
  const auto c = BuildDictionary({"C"}, 2, 4);
  EXPECT_EQ(c.IndexOf("C"), 2u);
  EXPECT_EQ(c.NameAt(2), "C");
  EXPECT_FALSE(c.NameAt(0));
  EXPECT_EQ(c.ToJson()["party_offset"], 2);
}

TEST(DictionaryTest, Errors) {
  EXPECT_THROW(BuildDictionary({"A", "A"}, 0, 4), Error);
  EXPECT_THROW(BuildDictionary({"A", "B"}, 3, 4), RangeError);
}

TEST(DictionaryTest, TrafficFinesVocabularySplit) {
  const auto log = ReadCsvFile(MPCDFG_FIXTURE_DIR "/traffic_fines_activities.csv");
  ASSERT_EQ(DistinctActivities(log).size(), 11u);
  const auto split = SplitRoundRobin(log);
  const auto names_a = DistinctActivities(split.a);
  const auto names_b = DistinctActivities(split.b);
  ASSERT_EQ(names_a.size(), 6u);
  ASSERT_EQ(names_b.size(), 5u);
  const auto a = BuildDictionary(names_a, 0, 11);
  const auto b = BuildDictionary(names_b, 6, 11);
  std::set<std::size_t> indices_a, indices_b;
  for (const auto& n : names_a) indices_a.insert(*a.IndexOf(n));
  for (const auto& n : names_b) indices_b.insert(*b.IndexOf(n));
  EXPECT_EQ(indices_a, (std::set<std::size_t>{0, 1, 2, 3, 4, 5}));
  EXPECT_EQ(indices_b, (std::set<std::size_t>{6, 7, 8, 9, 10}));
}

TEST(CaseIndexTest, CanonicalOrder) {
  const std::vector<RawEvent> a = {{"c10", "A", 1}, {"c2", "A", 1}};
  const std::vector<RawEvent> b = {{"c1", "B", 1}, {"c2", "B", 2}};
  const auto cases = CaseIndex::Union(a, b);
  EXPECT_EQ(cases.sorted(), (std::vector<std::string>{"c1", "c10", "c2"}));
  EXPECT_EQ(cases.IndexOf("c2"), 2u);
  EXPECT_FALSE(cases.IndexOf("c3"));
}

TEST(PrepareTest, SingleEventPaddedOnce) {
  const auto dict = BuildDictionary({"A"}, 0, 1);
  const auto log = Prepare({{"c", "A", 100}}, dict, 2);
  ASSERT_EQ(log.rows.size(), 2u);
  EXPECT_EQ(log.rows[0].trace_index, 0u);
  EXPECT_EQ(log.rows[0].onehot, std::vector<std::uint8_t>{1});
  EXPECT_EQ(log.rows[0].timestamp, 100u);
  EXPECT_EQ(log.rows[1].trace_index, 0u);
  EXPECT_EQ(log.rows[1].onehot, std::vector<std::uint8_t>{0});
  EXPECT_EQ(log.rows[1].timestamp, std::uint64_t{1} << 62);
  EXPECT_TRUE(log.rows[1].is_dummy());
}

TEST(PrepareTest, FixedLengthTracesNeedNoPadding) {
  std::vector<RawEvent> events;
  for (int c = 0; c < 4; ++c) {
    for (int k = 0; k < 15; ++k) {
      events.push_back({"case" + std::to_string(c), "act" + std::to_string(k % 8),
                        static_cast<std::uint64_t>(1000 * c + k)});
    }
  }
  const auto dict = BuildDictionary(DistinctActivities(events), 0, 8);
  const auto log = Prepare(events, dict, 15);
  EXPECT_EQ(log.rows.size(), 60u);
  EXPECT_EQ(log.real_event_count(), 60u);
}

TEST(PrepareTest, ArithmeticOfDummies) {
  const auto dict = BuildDictionary({"A", "B"}, 0, 2);
  const std::vector<RawEvent> events = {{"x", "A", 1}, {"x", "B", 2},
                                        {"y", "A", 1}, {"y", "A", 2},
                                        {"y", "B", 3}};
  const auto log = Prepare(events, dict, 3);
  EXPECT_EQ(log.rows.size() - log.real_event_count(), 1u);
  EXPECT_THROW(Prepare(events, dict, 2), RangeError);
}

TEST(PrepareTest, SortsWithinTraceStably) {
  const auto dict = BuildDictionary({"A", "B", "C"}, 0, 3);
  const std::vector<RawEvent> events = {
      {"t", "C", 30}, {"t", "A", 10}, {"t", "B", 10}};
  const auto log = Prepare(events, dict, 3);
  EXPECT_EQ(log.rows[0].onehot, (std::vector<std::uint8_t>{1, 0, 0}));
  EXPECT_EQ(log.rows[1].onehot, (std::vector<std::uint8_t>{0, 1, 0}));
  EXPECT_EQ(log.rows[2].onehot, (std::vector<std::uint8_t>{0, 0, 1}));
  EXPECT_EQ(log.rows[2].sequence, 2u);
}

TEST(PrepareTest, RoundTripRecoversEvents) {
  const auto events = ReadCsvFile(MPCDFG_FIXTURE_DIR "/traffic_fines_activities.csv");
  const auto names = DistinctActivities(events);
  const auto dict = BuildDictionary(names, 2, names.size() + 4);
  const CaseIndex cases = CaseIndex::Union(events, {});
  const auto log = Prepare(events, dict, cases, MaxTraceLength(events) + 1);
  std::multiset<std::tuple<std::string, std::string, std::uint64_t>> decoded,
      original;
  for (const auto& row : log.rows) {
    if (row.is_dummy()) continue;
    const auto hot = std::find(row.onehot.begin(), row.onehot.end(), 1);
    decoded.insert({cases.sorted()[row.trace_index],
                    *dict.NameAt(hot - row.onehot.begin()), row.timestamp});
  }
  for (const auto& e : events) original.insert({e.case_id, e.activity, e.timestamp});
  EXPECT_EQ(decoded, original);
}

std::vector<std::uint64_t> TraceIndices(const PreparedLog& log) {
  std::vector<std::uint64_t> out;
  for (std::size_t r = 0; r < log.rows.size(); r += log.max_trace_length) {
    out.push_back(log.rows[r].trace_index);
  }
  return out;
}

PreparedLog LogWithTraces(std::size_t traces) {
  std::vector<RawEvent> events;
  for (std::size_t t = 0; t < traces; ++t) {
    events.push_back({"c" + std::to_string(t), "A", t});
  }
  return Prepare(events, BuildDictionary({"A"}, 0, 1), 2);
}

TEST(AssignChunksTest, ModRule) {
  const auto chunks = AssignChunks(LogWithTraces(4), 2);
  ASSERT_EQ(chunks.size(), 2u);
  EXPECT_EQ(TraceIndices(chunks[0]), (std::vector<std::uint64_t>{0, 2}));
  EXPECT_EQ(TraceIndices(chunks[1]), (std::vector<std::uint64_t>{1, 3}));
}

TEST(AssignChunksTest, ShortChunkGetsDummyTrace) {
  const auto chunks = AssignChunks(LogWithTraces(5), 2);
  EXPECT_EQ(chunks[0].rows.size(), 6u);
  EXPECT_EQ(chunks[1].rows.size(), 6u);
  EXPECT_EQ(TraceIndices(chunks[1]), (std::vector<std::uint64_t>{1, 3, 5}));
  EXPECT_TRUE(chunks[1].rows[4].is_dummy());
  EXPECT_TRUE(chunks[1].rows[5].is_dummy());
}

TEST(AssignChunksTest, SingleChunkIdentity) {
  const auto log = LogWithTraces(1);
  const auto chunks = AssignChunks(log, 1);
  ASSERT_EQ(chunks.size(), 1u);
  EXPECT_EQ(chunks[0].rows.size(), log.rows.size());
  EXPECT_EQ(TraceIndices(chunks[0]), TraceIndices(log));
  EXPECT_THROW(AssignChunks(log, 0), RangeError);
}

TEST(AssignChunksTest, Partition) {
  const auto log = LogWithTraces(13);
  const auto chunks = AssignChunks(log, 4);
  std::multiset<std::uint64_t> seen;
  for (const auto& c : chunks) {
    EXPECT_EQ(c.rows.size(), 4u * log.max_trace_length);
    for (const auto& r : c.rows) {
      if (!r.is_dummy()) seen.insert(r.trace_index);
    }
  }
  std::multiset<std::uint64_t> expected;
  for (const auto& r : log.rows) {
    if (!r.is_dummy()) expected.insert(r.trace_index);
  }
  EXPECT_EQ(seen, expected);
}

TEST(MetadataTest, Agree) {
  const auto md = PublicMetadata::Agree({3, 4, 10}, {2, 7, 10}, 1, 2);
  EXPECT_EQ(md.m_a, 3u);
  EXPECT_EQ(md.m_b, 2u);
  EXPECT_EQ(md.max_trace_length, 7u);
  EXPECT_EQ(md.global_width(), 6u);
  EXPECT_EQ(md.true_width(), 5u);
  EXPECT_EQ(md.ToJson()["trace_count"], 10);
  EXPECT_THROW(PublicMetadata::Agree({3, 4, 10}, {2, 7, 11}, 0, 1),
               MetadataMismatch);
}

}  // namespace
}  // namespace mpcdfg
