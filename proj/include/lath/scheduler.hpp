// Copyright 2026 the lath authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lath/cost.hpp"
#include "lath/topology.hpp"

namespace lath {

/// One underlying call performed by a node-processor.
struct CallRecord {
    std::int64_t round = 0;      ///< 1-based global round
    std::int64_t call_index = 0; ///< 1-based within the node
    std::size_t first_item = 0;  ///< input items feeding this call
    std::size_t last_item = 0;
};

/// Per-processor timelines of a lockstep run. One processor per node; each
/// performs at most one call per round; the makespan is the root's finish.
struct Schedule {
    std::int64_t makespan = 0;
    std::int64_t processor_count = 0;
    std::vector<std::vector<CallRecord>> timelines; ///< indexed by node id
    std::vector<std::int64_t> node_finish;          ///< indexed by node id

    std::int64_t total_calls() const;
};

/// Deterministic lockstep simulation under the CREW PRAM discipline: in each
/// round every node performs its next call iff its previous call has ended
/// and every bit the call consumes is available. A chaining value produced in
/// round t is consumable from round t+1 onward. The lockstep result is
/// cross-checked against a bottom-up absorb_finish_time evaluation; any
/// disagreement throws std::logic_error.
///
/// message_bits < 0 means l whole blocks; otherwise the final block may be
/// partial. Throws on d mismatch between tree and params.
Schedule simulate(const TreeTopology& tree, const CostParams& params, std::int64_t message_bits = -1);

/// A root-to-leaf-node chain of ids along which every finish time is tight:
/// each hop is the constraint that determined the previous node's last call.
std::vector<std::int64_t> critical_path(const Schedule& schedule, const TreeTopology& tree,
                                        const CostParams& params, std::int64_t message_bits = -1);

/// Rounds-by-processors matrix plus per-node timelines, stable field order.
std::string schedule_to_json(const Schedule& schedule);

/// Fixed-width ASCII Gantt table, one row per processor, one column per
/// round; cells hold the call index, '.' marks an idle round.
std::string schedule_gantt(const Schedule& schedule);

/// Input items of one node under the stream model: blocks ready at 0 (the
/// final message block may be partial) and chaining values ready at the given
/// per-node finish times.
std::vector<StreamItem> node_stream(const TreeNode& node, const TreeTopology& tree,
                                    const CostParams& params,
                                    const std::vector<std::int64_t>& child_finish,
                                    std::int64_t message_bits = -1);

} // namespace lath
