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

#ifndef MPCDFG_SYNTHETIC_H_
#define MPCDFG_SYNTHETIC_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mpcdfg/event_log.h"

namespace mpcdfg {

struct SyntheticOptions {
  std::size_t traces = 10;
  std::size_t min_length = 1;
  std::size_t max_length = 10;
  std::size_t activities = 4;
  std::uint64_t start_time = 1'600'000'000;
  // Gaps between consecutive events of a case are uniform in [0, max_gap];
  // zero gaps produce timestamp ties.
  std::uint64_t max_gap = 3600;
  std::uint64_t seed = 1;
};

// Activity names are "act_00", "act_01", ...; case ids "case_00000", ...
std::string SyntheticActivityName(std::size_t index);
std::string SyntheticCaseId(std::size_t index);

// Events of every case in timestamp order, cases emitted one after another.
std::vector<RawEvent> GenerateLog(const SyntheticOptions& options);

// A log with exactly `events` events over `cases` cases, every case length
// in [min_length, max_length] and the first case of maximal length.
std::vector<RawEvent> GenerateShapedLog(std::size_t cases, std::size_t events,
                                        std::size_t min_length,
                                        std::size_t max_length,
                                        std::size_t activities,
                                        std::uint64_t seed);

}  // namespace mpcdfg

#endif  // MPCDFG_SYNTHETIC_H_
