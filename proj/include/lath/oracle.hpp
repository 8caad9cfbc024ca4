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

#include "lath/topology.hpp"

namespace lath {

/// Shape of an optimal composition: the node hashes front_blocks message
/// blocks and then the chaining values of its children, listed in ascending
/// finish-time order.
struct WitnessNode {
    std::int64_t front_blocks = 0;
    std::vector<WitnessNode> children;
};

struct OracleResult {
    std::int64_t l = 0;
    std::int64_t d = 1;
    std::int64_t optimal_time = 0;
    WitnessNode witness;
};

/// Size caps for the exhaustive search; configuration, not policy.
struct OracleLimits {
    std::int64_t cap_d1 = 24;
    std::int64_t cap_dgt1 = 18;
    std::int64_t cap(std::int64_t d) const { return d == 1 ? cap_d1 : cap_dgt1; }
};

/// Minimal achievable parallel time over all tree-mode compositions of an
/// l-block message, by memoized recursion over subtree sizes with unlimited
/// processors. A composition follows the tree grammar: every inner-function
/// input combines at least two items (a one-block message degenerates to the
/// sole single-item node), so a child subtree always holds two or more
/// blocks. Within a node, message blocks are placed first and chaining
/// values sorted by ready time; full_enumeration_check validates those two
/// ordering assumptions against an unpruned search at small sizes.
/// Throws "oracle cap exceeded" above the configured cap.
OracleResult optimal_time_bruteforce(std::int64_t l, std::int64_t d, const OracleLimits& limits = {});

/// Enumerates every ordered node-input composition (blocks and subtrees in
/// arbitrary order, no pruning) and confirms the same minimum as the pruned
/// recursion, for every message size up to l. Requires l <= 8.
bool full_enumeration_check(std::int64_t l, std::int64_t d);

/// Concrete topology realizing the witness; simulates to optimal_time.
TreeTopology witness_topology(const OracleResult& result);

} // namespace lath
