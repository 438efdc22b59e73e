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

#ifndef MPCDFG_EVENT_LOG_H_
#define MPCDFG_EVENT_LOG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace mpcdfg {

// Legal timestamps are strictly below this value; dummy rows carry it.
inline constexpr std::uint64_t kDummyTimestamp = std::uint64_t{1} << 62;

struct RawEvent {
  std::string case_id;
  std::string activity;
  std::uint64_t timestamp = 0;

  bool operator==(const RawEvent&) const = default;
};

// Parses `case_id,activity,timestamp` CSV (header required, columns located
// by name, extra columns ignored). Timestamps are epoch seconds or ISO-8601.
std::vector<RawEvent> ParseCsv(std::string_view text);
std::vector<RawEvent> ReadCsvFile(const std::string& path);
std::string WriteCsv(const std::vector<RawEvent>& events);

// Epoch seconds from "YYYY-MM-DD[T| ]hh:mm:ss[.frac][Z|+hh:mm|-hh:mm]" or a
// bare date. Returns nullopt when the text is not ISO-8601.
std::optional<std::int64_t> ParseIso8601(std::string_view text);

// Distinct activity names, sorted.
std::vector<std::string> DistinctActivities(const std::vector<RawEvent>& log);

// Maps one party's activity names onto its contiguous block of one-hot
// positions [party_offset, party_offset + size).
class ActivityDictionary {
 public:
  ActivityDictionary() = default;
  ActivityDictionary(std::size_t party_offset,
                     std::vector<std::string> sorted_names,
                     std::size_t global_width)
      : party_offset_(party_offset),
        local_names_(std::move(sorted_names)),
        global_width_(global_width) {}

  std::size_t party_offset() const { return party_offset_; }
  std::size_t global_width() const { return global_width_; }
  std::size_t local_count() const { return local_names_.size(); }
  const std::vector<std::string>& local_names() const { return local_names_; }

  std::optional<std::size_t> IndexOf(std::string_view name) const;
  // Name for a global index inside this party's block.
  std::optional<std::string> NameAt(std::size_t index) const;

  nlohmann::json ToJson() const;

 private:
  std::size_t party_offset_ = 0;
  std::vector<std::string> local_names_;
  std::size_t global_width_ = 0;
};

ActivityDictionary BuildDictionary(std::vector<std::string> local_activities,
                                   std::size_t party_offset,
                                   std::size_t global_width);

// Case identifiers are known to both parties; the lexicographically sorted
// union fixes the dense trace index of every case.
class CaseIndex {
 public:
  explicit CaseIndex(std::vector<std::string> case_ids);
  static CaseIndex Union(const std::vector<RawEvent>& a,
                         const std::vector<RawEvent>& b);

  std::size_t size() const { return sorted_.size(); }
  std::optional<std::size_t> IndexOf(std::string_view case_id) const;
  const std::vector<std::string>& sorted() const { return sorted_; }

 private:
  std::vector<std::string> sorted_;
};

struct PreparedRow {
  std::uint64_t trace_index = 0;
  // Position of the row inside its trace after the local timestamp sort; it
  // breaks timestamp ties deterministically once both logs are combined.
  std::uint64_t sequence = 0;
  std::vector<std::uint8_t> onehot;
  std::uint64_t timestamp = kDummyTimestamp;

  bool is_dummy() const;
};

struct PreparedLog {
  std::vector<PreparedRow> rows;
  std::size_t max_trace_length = 0;
  std::size_t trace_count = 0;
  std::size_t width = 0;

  std::size_t real_event_count() const;
};

// Encodes, groups, pads and sorts one party's log. Every case in `cases`
// contributes exactly `max_trace_length` rows, the tail of each trace being
// dummies with a zero one-hot vector and kDummyTimestamp.
PreparedLog Prepare(const std::vector<RawEvent>& events,
                    const ActivityDictionary& dict, const CaseIndex& cases,
                    std::size_t max_trace_length);

// Single-party convenience: the case index is this log's own cases.
PreparedLog Prepare(const std::vector<RawEvent>& events,
                    const ActivityDictionary& dict,
                    std::size_t max_trace_length);

// Trace t goes to chunk t mod chunk_count; short chunks are topped up with
// all-dummy traces numbered from trace_count upwards so that every chunk
// holds ceil(T / chunk_count) traces.
std::vector<PreparedLog> AssignChunks(const PreparedLog& prepared,
                                      std::size_t chunk_count);

// Longest trace of a log, in events.
std::size_t MaxTraceLength(const std::vector<RawEvent>& events);

// What one input party announces about its log.
struct LocalStatistics {
  std::size_t activity_count = 0;
  std::size_t max_trace_length = 0;
  std::size_t trace_count = 0;
};

// The only plaintext values that cross the party boundary.
struct PublicMetadata {
  std::size_t m_a = 0;
  std::size_t m_b = 0;
  std::size_t activity_padding = 0;
  std::size_t max_trace_length = 0;
  std::size_t trace_count = 0;
  std::size_t chunk_count = 1;

  std::size_t true_width() const { return m_a + m_b; }
  std::size_t global_width() const { return m_a + m_b + activity_padding; }

  static PublicMetadata Agree(const LocalStatistics& a,
                              const LocalStatistics& b,
                              std::size_t activity_padding,
                              std::size_t chunk_count);

  nlohmann::json ToJson() const;
  bool operator==(const PublicMetadata&) const = default;
};

}  // namespace mpcdfg

#endif  // MPCDFG_EVENT_LOG_H_
