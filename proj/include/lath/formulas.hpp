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
#include <vector>

namespace lath {

/// Closed-form plan for a height-2 tree.
///
/// Processor 1 hashes the first i message blocks and then the chaining values
/// of the others as they arrive; processor t (t >= 2) hashes a run of
/// i + t - 2 consecutive blocks (the last run may be shorter). k is the index
/// of the last block-receiving processor in the untrimmed layout; the finish
/// time is k + 1. If the last run would be a single block, that block moves
/// to processor 1 instead, saving one processor at the same finish time.
struct Height2Plan {
    std::int64_t l = 0;
    std::int64_t k = 0; ///< index of the last block-receiving processor
    std::int64_t i = 2; ///< message blocks held by processor 1
    std::int64_t processors = 0;
    std::int64_t time = 0; ///< k + 1
    std::vector<std::int64_t> chunk_sizes; ///< per processor, P1 first; sums to l
    bool folded_last_block = false;        ///< trailing single block moved to P1
};

/// Height-2 plan with the base allocation (i = 2): k is the smallest integer
/// with k^2 + k - 2(l-1) >= 0, i.e. k = ceil((-1 + sqrt(8l-7)) / 2).
/// Requires l >= 2 ("message too short for a tree").
Height2Plan height2_k(std::int64_t l);

/// Processor-minimized height-2 plan: i is the largest j that still attains
/// the minimal k = ceil((-1 + sqrt(4j^2 - 12j + 8l + 1)) / 2), found by direct
/// search; the searched k is cross-checked against the closed form
/// ceil((-1 + sqrt(8l-8)) / 2) and any disagreement throws "formula mismatch".
/// Uses k - i + 2 processors (one less when the fold applies).
Height2Plan height2_optimized(std::int64_t l);

/// Predicted time/processors for the transformed tree with b leaves per node.
struct UnrestrictedPlan {
    std::int64_t l = 0;
    std::int64_t d = 1;
    std::int64_t leaf_arity = 2; ///< b, message blocks per block-bearing node
    std::int64_t time = 0;
    std::int64_t processors = 0;
};

/// time = ceil(log_{d+1}(l/b)) + b, processors = ceil(l/b), for l > b.
/// A message that fits one node (l <= b) hashes in l units on one processor.
/// Requires l >= 2, d >= 1, b in {2, 3}.
UnrestrictedPlan predict_unrestricted(std::int64_t l, std::int64_t d, std::int64_t b);

/// Picks the leaf arity that attains the optimal time with the fewest
/// processors: b = 3 exactly when 2(d+1)^i < l <= 3(d+1)^i for the largest
/// integer i with 2(d+1)^i < l, else b = 2. The time is the optimal
/// ceil(log_{d+1}(l/2)) + 2 either way.
UnrestrictedPlan select_leaf_arity(std::int64_t l, std::int64_t d);

/// Plan for hashing with a fixed processor budget.
struct BoundedPlan {
    std::int64_t l = 0;
    std::int64_t d = 1;
    std::int64_t requested_p = 0;
    std::int64_t p = 0;        ///< effective processors, min(requested, l)
    std::int64_t a = 0;        ///< processors taking ceil(l/p) blocks
    std::int64_t b_count = 0;  ///< processors taking floor(l/p) blocks
    std::int64_t time = 0;     ///< ceil(l/p) + ceil(log_{d+1} p)
    bool clamped = false;      ///< requested_p exceeded l
};

/// time = ceil(l/P) + ceil(log_{d+1} P) with the unique split
/// a + b_count = P, a*ceil(l/P) + b_count*floor(l/P) = l (a = P when P | l).
/// P > l is clamped to P = l and noted in the plan. Requires l, P, d >= 1.
BoundedPlan predict_bounded(std::int64_t l, std::int64_t d, std::int64_t P);

/// Running-time upper bound for topologies derived from a ternary tree:
/// 2*ceil(log_3 l) + 1. Comparison reporting only. Requires l >= 2.
std::int64_t ternary_derivation_time(std::int64_t l);

} // namespace lath
