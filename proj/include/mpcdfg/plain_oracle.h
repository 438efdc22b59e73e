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

#ifndef MPCDFG_PLAIN_ORACLE_H_
#define MPCDFG_PLAIN_ORACLE_H_

#include <cstdint>
#include <vector>

#include "mpcdfg/dfg_engine.h"
#include "mpcdfg/event_log.h"
#include "mpcdfg/query_layer.h"

namespace mpcdfg {

// Plaintext DFG of the union of two logs. Events of one case are ordered by
// timestamp, then log A before log B, then position in the file.
PlainDfg OracleDfg(const std::vector<RawEvent>& log_a,
                   const ActivityDictionary& dict_a,
                   const std::vector<RawEvent>& log_b,
                   const ActivityDictionary& dict_b);

PlainDfg OracleDfg(const std::vector<RawEvent>& log,
                   const ActivityDictionary& dict);

// Clear-backend counterparts of the query layer; same tie rules and the
// same reveal arity.
QueryResult PlainCellQuery(const PlainDfg& dfg, const PublicMetadata& metadata,
                           std::size_t p, std::size_t q);
QueryResult PlainTopkHandoffs(const PlainDfg& dfg,
                              const PublicMetadata& metadata, std::size_t k);
QueryResult PlainTopkBottlenecks(const PlainDfg& dfg,
                                 const PublicMetadata& metadata, std::size_t k,
                                 std::uint64_t time_window = kDefaultTimeWindow);
QueryResult PlainHandoffWaitingTime(const PlainDfg& dfg,
                                    const PublicMetadata& metadata,
                                    std::size_t p, std::size_t q);

}  // namespace mpcdfg

#endif  // MPCDFG_PLAIN_ORACLE_H_
