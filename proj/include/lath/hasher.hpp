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

#include "lath/bitstring.hpp"
#include "lath/sponge.hpp"
#include "lath/topology.hpp"

namespace lath {

enum class ExecMode { Sequential, WorkerPool, Lockstep };

/// Outcome of hashing a message over a topology. The digest is identical
/// across modes; work (total permutation calls) is schedule-invariant.
struct ExecutionReport {
    Digest digest;
    ExecMode mode = ExecMode::Sequential;
    std::int64_t total_calls = 0;
    std::int64_t lockstep_rounds = 0; ///< Lockstep mode only
    int workers_used = 1;
    std::vector<std::int64_t> per_node_calls;
};

struct WorkerOptions {
    int workers = 4;
    /// Random per-task delays (microseconds) that perturb scheduling without
    /// being allowed to change the digest; 0 disables.
    std::uint32_t jitter_max_us = 0;
    std::uint64_t jitter_seed = 0;
};

/// Reference evaluator: nodes in dependency order on one thread.
/// The message must hold l blocks, the final one possibly partial.
ExecutionReport hash_sequential(const BitString& message, const TreeTopology& tree,
                                const PrefixStateTable& table);

/// Dependency-driven worker pool. Every node is a task that absorbs its
/// message blocks immediately and suspends awaiting each chaining value in
/// input order; child-digest delivery happens-before the parent's consuming
/// call, and completion is deadlock-free for any worker count.
ExecutionReport hash_workerpool(const BitString& message, const TreeTopology& tree,
                                const PrefixStateTable& table, const WorkerOptions& options = {});

/// Barrier-synchronized execution: one thread per node, one global barrier
/// per unit round, at most one call per node per round when its next
/// rate-block of input is fully available. The empirical round count equals
/// the simulator's makespan.
ExecutionReport hash_lockstep(const BitString& message, const TreeTopology& tree,
                              const PrefixStateTable& table);

} // namespace lath
