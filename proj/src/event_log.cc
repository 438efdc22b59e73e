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
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "mpcdfg/errors.h"

namespace mpcdfg {
namespace {

// Splits one CSV record, honouring double-quoted fields with "" escapes.
std::vector<std::string> SplitCsvRecord(std::string_view line,
                                        std::size_t line_no) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted field");
  return fields;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Days since 1970-01-01 of a proleptic Gregorian date.
std::int64_t DaysFromCivil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

bool ReadDigits(std::string_view& s, std::size_t count, int& out) {
  if (s.size() < count) return false;
  out = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    out = out * 10 + (s[i] - '0');
  }
  s.remove_prefix(count);
  return true;
}

bool Expect(std::string_view& s, char c) {
  if (s.empty() || s.front() != c) return false;
  s.remove_prefix(1);
  return true;
}

std::uint64_t ParseTimestamp(std::string_view text, std::size_t line_no) {
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc() && ptr == text.data() + text.size()) {
    if (value >= kDummyTimestamp) {
      throw RangeError("line " + std::to_string(line_no) +
                       ": timestamp must be below 2^62");
    }
    return value;
  }
  if (ec == std::errc::result_out_of_range) {
    throw RangeError("line " + std::to_string(line_no) +
                     ": timestamp must be below 2^62");
  }
  const auto iso = ParseIso8601(text);
  if (!iso) throw ParseError(line_no, "unrecognised timestamp '" +
                                          std::string(text) + "'");
  if (*iso < 0) {
    throw RangeError("line " + std::to_string(line_no) +
                     ": timestamp before the epoch");
  }
  return static_cast<std::uint64_t>(*iso);
}

}  // namespace

std::optional<std::int64_t> ParseIso8601(std::string_view s) {
  int year, month, day;
  if (!ReadDigits(s, 4, year) || !Expect(s, '-') || !ReadDigits(s, 2, month) ||
      !Expect(s, '-') || !ReadDigits(s, 2, day)) {
    return std::nullopt;
  }
  if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;
  std::int64_t seconds = DaysFromCivil(year, month, day) * 86400;
  if (s.empty()) return seconds;
  if (s.front() != 'T' && s.front() != ' ') return std::nullopt;
  s.remove_prefix(1);
  int hh, mm, ss = 0;
  if (!ReadDigits(s, 2, hh) || !Expect(s, ':') || !ReadDigits(s, 2, mm)) {
    return std::nullopt;
  }
  if (!s.empty() && s.front() == ':' ) {
    s.remove_prefix(1);
    if (!ReadDigits(s, 2, ss)) return std::nullopt;
  }
  if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  seconds += hh * 3600 + mm * 60 + ss;
  // Sub-second digits are truncated.
  if (!s.empty() && (s.front() == '.' || s.front() == ',')) {
    s.remove_prefix(1);
    while (!s.empty() && s.front() >= '0' && s.front() <= '9') s.remove_prefix(1);
  }
  if (s.empty() || s == "Z") return seconds;
  const char sign = s.front();
  if (sign != '+' && sign != '-') return std::nullopt;
  s.remove_prefix(1);
  int oh, om = 0;
  if (!ReadDigits(s, 2, oh)) return std::nullopt;
  if (!s.empty()) {
    Expect(s, ':');
    if (!ReadDigits(s, 2, om) || !s.empty()) return std::nullopt;
  }
  const std::int64_t offset = oh * 3600 + om * 60;
  return sign == '+' ? seconds - offset : seconds + offset;
}

std::vector<RawEvent> ParseCsv(std::string_view text) {
  std::vector<RawEvent> events;
  std::size_t line_no = 0;
  std::optional<std::array<std::size_t, 3>> columns;
  std::size_t field_count = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
    if (Trim(line).empty()) continue;
    auto fields = SplitCsvRecord(line, line_no);
    if (!columns) {
      std::array<std::size_t, 3> found;
      const std::array<std::string_view, 3> names = {"case_id", "activity",
                                                     "timestamp"};
      for (std::size_t n = 0; n < names.size(); ++n) {
        auto it = std::find_if(fields.begin(), fields.end(), [&](auto& f) {
          return Trim(f) == names[n];
        });
        if (it == fields.end()) {
          throw ParseError(line_no, "header lacks column '" +
                                        std::string(names[n]) + "'");
        }
        found[n] = static_cast<std::size_t>(it - fields.begin());
      }
      columns = found;
      field_count = fields.size();
      continue;
    }
    if (fields.size() != field_count) {
      throw ParseError(line_no, "expected " + std::to_string(field_count) +
                                    " fields, found " +
                                    std::to_string(fields.size()));
    }
    RawEvent e;
    e.case_id = std::string(Trim(fields[(*columns)[0]]));
    e.activity = std::string(Trim(fields[(*columns)[1]]));
    if (e.case_id.empty()) throw ParseError(line_no, "empty case_id");
    if (e.activity.empty()) throw ParseError(line_no, "empty activity");
    e.timestamp = ParseTimestamp(Trim(fields[(*columns)[2]]), line_no);
    events.push_back(std::move(e));
  }
  if (!columns) throw ParseError(1, "missing header");
  return events;
}

std::vector<RawEvent> ReadCsvFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseCsv(buf.str());
}

std::string WriteCsv(const std::vector<RawEvent>& events) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream out;
  out << "case_id,activity,timestamp\n";
  for (const auto& e : events) {
    out << quote(e.case_id) << ',' << quote(e.activity) << ',' << e.timestamp
        << '\n';
  }
  return out.str();
}

std::vector<std::string> DistinctActivities(const std::vector<RawEvent>& log) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& e : log) {
    if (seen.insert(e.activity).second) out.push_back(e.activity);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> ActivityDictionary::IndexOf(
    std::string_view name) const {
  auto it = std::lower_bound(local_names_.begin(), local_names_.end(), name);
  if (it == local_names_.end() || *it != name) return std::nullopt;
  return party_offset_ + static_cast<std::size_t>(it - local_names_.begin());
}

std::optional<std::string> ActivityDictionary::NameAt(std::size_t index) const {
  if (index < party_offset_ || index >= party_offset_ + local_names_.size()) {
    return std::nullopt;
  }
  return local_names_[index - party_offset_];
}

nlohmann::json ActivityDictionary::ToJson() const {
  return {{"party_offset", party_offset_},
          {"global_width", global_width_},
          {"local_names", local_names_}};
}

ActivityDictionary BuildDictionary(std::vector<std::string> local_activities,
                                   std::size_t party_offset,
                                   std::size_t global_width) {
  std::sort(local_activities.begin(), local_activities.end());
  auto dup = std::adjacent_find(local_activities.begin(), local_activities.end());
  if (dup != local_activities.end()) {
    throw Error("duplicate activity name '" + *dup + "'");
  }
  if (party_offset + local_activities.size() > global_width) {
    throw RangeError("activity block exceeds the one-hot width");
  }
  return ActivityDictionary(party_offset, std::move(local_activities),
                            global_width);
}

CaseIndex::CaseIndex(std::vector<std::string> case_ids)
    : sorted_(std::move(case_ids)) {
  std::sort(sorted_.begin(), sorted_.end());
  sorted_.erase(std::unique(sorted_.begin(), sorted_.end()), sorted_.end());
}

CaseIndex CaseIndex::Union(const std::vector<RawEvent>& a,
                           const std::vector<RawEvent>& b) {
  std::vector<std::string> ids;
  ids.reserve(a.size() + b.size());
  for (const auto& e : a) ids.push_back(e.case_id);
  for (const auto& e : b) ids.push_back(e.case_id);
  return CaseIndex(std::move(ids));
}

std::optional<std::size_t> CaseIndex::IndexOf(std::string_view case_id) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), case_id);
  if (it == sorted_.end() || *it != case_id) return std::nullopt;
  return static_cast<std::size_t>(it - sorted_.begin());
}

bool PreparedRow::is_dummy() const {
  return std::none_of(onehot.begin(), onehot.end(),
                      [](std::uint8_t b) { return b != 0; });
}

std::size_t PreparedLog::real_event_count() const {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [](const PreparedRow& r) { return !r.is_dummy(); }));
}

std::size_t MaxTraceLength(const std::vector<RawEvent>& events) {
  std::unordered_map<std::string_view, std::size_t> lengths;
  std::size_t longest = 0;
  for (const auto& e : events) longest = std::max(longest, ++lengths[e.case_id]);
  return longest;
}

PreparedLog Prepare(const std::vector<RawEvent>& events,
                    const ActivityDictionary& dict, const CaseIndex& cases,
                    std::size_t max_trace_length) {
  const std::size_t width = dict.global_width();
  std::vector<std::vector<const RawEvent*>> traces(cases.size());
  for (const auto& e : events) {
    const auto t = cases.IndexOf(e.case_id);
    if (!t) throw Error("case '" + e.case_id + "' missing from the case index");
    traces[*t].push_back(&e);
  }
  PreparedLog log;
  log.max_trace_length = max_trace_length;
  log.trace_count = cases.size();
  log.width = width;
  log.rows.reserve(cases.size() * max_trace_length);
  for (std::size_t t = 0; t < traces.size(); ++t) {
    auto& trace = traces[t];
    if (trace.size() > max_trace_length) {
      throw RangeError("case '" + cases.sorted()[t] + "' has " +
                       std::to_string(trace.size()) +
                       " events, more than the padded length " +
                       std::to_string(max_trace_length));
    }
    std::stable_sort(trace.begin(), trace.end(),
                     [](const RawEvent* x, const RawEvent* y) {
                       return x->timestamp < y->timestamp;
                     });
    for (std::size_t k = 0; k < max_trace_length; ++k) {
      PreparedRow row;
      row.trace_index = t;
      row.sequence = k;
      row.onehot.assign(width, 0);
      if (k < trace.size()) {
        const RawEvent& e = *trace[k];
        const auto index = dict.IndexOf(e.activity);
        if (!index) throw Error("activity '" + e.activity + "' not in dictionary");
        if (e.timestamp >= kDummyTimestamp) {
          throw RangeError("timestamp must be below 2^62");
        }
        row.onehot[*index] = 1;
        row.timestamp = e.timestamp;
      }
      log.rows.push_back(std::move(row));
    }
  }
  return log;
}

PreparedLog Prepare(const std::vector<RawEvent>& events,
                    const ActivityDictionary& dict,
                    std::size_t max_trace_length) {
  std::vector<std::string> ids;
  for (const auto& e : events) ids.push_back(e.case_id);
  return Prepare(events, dict, CaseIndex(std::move(ids)), max_trace_length);
}

std::vector<PreparedLog> AssignChunks(const PreparedLog& prepared,
                                      std::size_t chunk_count) {
  if (chunk_count == 0) throw RangeError("chunk count must be at least 1");
  const std::size_t len = prepared.max_trace_length;
  const std::size_t per_chunk =
      (prepared.trace_count + chunk_count - 1) / chunk_count;
  std::vector<PreparedLog> chunks(chunk_count);
  for (auto& c : chunks) {
    c.max_trace_length = len;
    c.width = prepared.width;
    c.trace_count = per_chunk;
    c.rows.reserve(per_chunk * len);
  }
  for (std::size_t t = 0; t < prepared.trace_count; ++t) {
    auto& rows = chunks[t % chunk_count].rows;
    rows.insert(rows.end(), prepared.rows.begin() + t * len,
                prepared.rows.begin() + (t + 1) * len);
  }
  std::uint64_t fresh = prepared.trace_count;
  for (auto& c : chunks) {
    while (c.rows.size() < per_chunk * len) {
      for (std::size_t k = 0; k < len; ++k) {
        PreparedRow row;
        row.trace_index = fresh;
        row.sequence = k;
        row.onehot.assign(prepared.width, 0);
        c.rows.push_back(std::move(row));
      }
      ++fresh;
    }
  }
  return chunks;
}

PublicMetadata PublicMetadata::Agree(const LocalStatistics& a,
                                     const LocalStatistics& b,
                                     std::size_t activity_padding,
                                     std::size_t chunk_count) {
  if (a.trace_count != b.trace_count) {
    throw MetadataMismatch("parties disagree on the number of traces");
  }
  if (chunk_count == 0) throw RangeError("chunk count must be at least 1");
  PublicMetadata m;
  m.m_a = a.activity_count;
  m.m_b = b.activity_count;
  m.activity_padding = activity_padding;
  m.max_trace_length = std::max(a.max_trace_length, b.max_trace_length);
  m.trace_count = a.trace_count;
  m.chunk_count = chunk_count;
  return m;
}

nlohmann::json PublicMetadata::ToJson() const {
  return {{"m_a", m_a},
          {"m_b", m_b},
          {"activity_padding", activity_padding},
          {"max_trace_length", max_trace_length},
          {"trace_count", trace_count},
          {"chunk_count", chunk_count}};
}

}  // namespace mpcdfg
