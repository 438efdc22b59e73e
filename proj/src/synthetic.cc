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

#include "mpcdfg/synthetic.h"

#include <algorithm>
#include <cstdio>
#include <random>

#include "mpcdfg/errors.h"

namespace mpcdfg {
namespace {

std::vector<RawEvent> EmitCases(const std::vector<std::size_t>& lengths,
                                std::size_t activities,
                                std::uint64_t start_time, std::uint64_t max_gap,
                                std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, activities - 1);
  std::uniform_int_distribution<std::uint64_t> gap(0, max_gap);
  std::uniform_int_distribution<std::uint64_t> offset(0, 30 * 86400);
  std::vector<RawEvent> log;
  for (std::size_t c = 0; c < lengths.size(); ++c) {
    std::uint64_t ts = start_time + offset(rng);
    for (std::size_t k = 0; k < lengths[c]; ++k) {
      if (k > 0) ts += gap(rng);
      log.push_back({SyntheticCaseId(c), SyntheticActivityName(pick(rng)), ts});
    }
  }
  return log;
}

}  // namespace

std::string SyntheticActivityName(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "act_%02zu", index);
  return buf;
}

std::string SyntheticCaseId(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "case_%05zu", index);
  return buf;
}

std::vector<RawEvent> GenerateLog(const SyntheticOptions& options) {
  if (options.activities == 0 || options.min_length == 0 ||
      options.min_length > options.max_length) {
    throw RangeError("invalid synthetic log options");
  }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> length(options.min_length,
                                                    options.max_length);
  std::vector<std::size_t> lengths(options.traces);
  for (auto& l : lengths) l = length(rng);
  return EmitCases(lengths, options.activities, options.start_time,
                   options.max_gap, rng);
}

std::vector<RawEvent> GenerateShapedLog(std::size_t cases, std::size_t events,
                                        std::size_t min_length,
                                        std::size_t max_length,
                                        std::size_t activities,
                                        std::uint64_t seed) {
  if (cases < 2 || min_length == 0 || min_length > max_length ||
      events < (cases - 1) * min_length + max_length ||
      events > cases * max_length) {
    throw RangeError("requested log shape is infeasible");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> lengths(cases, min_length);
  lengths[0] = max_length;
  std::size_t remaining = events - (cases - 1) * min_length - max_length;
  std::uniform_int_distribution<std::size_t> pick(1, cases - 1);
  while (remaining > 0) {
    auto& l = lengths[pick(rng)];
    if (l < max_length) {
      ++l;
      --remaining;
    }
  }
  std::shuffle(lengths.begin(), lengths.end(), rng);
  return EmitCases(lengths, activities, 1'350'000'000, 2 * 86400, rng);
}

}  // namespace mpcdfg
