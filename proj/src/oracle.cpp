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

#include "lath/oracle.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "lath/cost.hpp"

namespace lath {

namespace {

// The model only depends on the ratio d, so any byte-aligned digest works.
CostParams model_params(std::int64_t d) {
    return CostParams{d, 8};
}

struct Candidate {
    std::int64_t front_blocks = 0;
    std::vector<std::int64_t> child_sizes; // non-increasing
};

/// Finish time of a node with q front blocks and children finishing at the
/// given times (any order).
std::int64_t candidate_time(std::int64_t q, std::vector<std::int64_t> child_times,
                            const CostParams& params) {
    std::sort(child_times.begin(), child_times.end());
    std::vector<StreamItem> items;
    items.reserve(static_cast<std::size_t>(q) + child_times.size());
    for (std::int64_t b = 0; b < q; ++b) {
        items.push_back(StreamItem::block(params.block_bits()));
    }
    for (const std::int64_t t : child_times) {
        items.push_back(StreamItem::chaining_value(params.digest_bits, t));
    }
    return absorb_finish_time(items, params);
}

/// Best times for all message sizes 1..l, optionally with the argmin
/// composition per size.
std::vector<std::int64_t> best_times(std::int64_t l, const CostParams& params,
                                     std::vector<Candidate>* best_choice) {
    std::vector<std::int64_t> best(static_cast<std::size_t>(l) + 1, 0);
    if (best_choice != nullptr) {
        best_choice->assign(static_cast<std::size_t>(l) + 1, {});
    }
    std::vector<std::int64_t> parts;
    for (std::int64_t n = 1; n <= l; ++n) {
        // single node: n whole blocks, n calls
        std::int64_t best_n = n;
        Candidate choice{n, {}};

        // q front blocks plus children covering the rest; children run on
        // disjoint processors, so each is independently optimal and only its
        // finish time matters (monotonicity of the stream rule). Every node
        // combines at least two items, so child subtrees hold >= 2 blocks.
        std::function<void(std::int64_t, std::int64_t, std::int64_t)> split =
            [&](std::int64_t q, std::int64_t remaining, std::int64_t max_part) {
                if (remaining == 1) {
                    return; // no valid child of a single block
                }
                if (remaining == 0) {
                    std::vector<std::int64_t> times;
                    times.reserve(parts.size());
                    for (const std::int64_t p : parts) {
                        times.push_back(best[static_cast<std::size_t>(p)]);
                    }
                    const std::int64_t t = candidate_time(q, std::move(times), params);
                    if (t < best_n) {
                        best_n = t;
                        if (best_choice != nullptr) {
                            choice = {q, parts};
                        }
                    }
                    return;
                }
                for (std::int64_t p = std::min(max_part, remaining); p >= 2; --p) {
                    parts.push_back(p);
                    split(q, remaining - p, p);
                    parts.pop_back();
                }
            };
        for (std::int64_t q = 0; q < n; ++q) {
            // q = 0 with a single child is a pointless re-hash; require
            // either front blocks or at least two children
            split(q, n - q, q >= 1 ? n - q : n - q - 1);
        }
        best[static_cast<std::size_t>(n)] = best_n;
        if (best_choice != nullptr) {
            (*best_choice)[static_cast<std::size_t>(n)] = std::move(choice);
        }
    }
    return best;
}

WitnessNode build_witness(std::int64_t n, const std::vector<Candidate>& choices,
                          const std::vector<std::int64_t>& best) {
    const Candidate& c = choices[static_cast<std::size_t>(n)];
    WitnessNode node;
    node.front_blocks = c.front_blocks;
    std::vector<std::int64_t> sizes = c.child_sizes;
    std::sort(sizes.begin(), sizes.end(), [&](std::int64_t a, std::int64_t b) {
        const std::int64_t ta = best[static_cast<std::size_t>(a)];
        const std::int64_t tb = best[static_cast<std::size_t>(b)];
        return ta != tb ? ta < tb : a < b;
    });
    for (const std::int64_t s : sizes) {
        node.children.push_back(build_witness(s, choices, best));
    }
    return node;
}

} // namespace

OracleResult optimal_time_bruteforce(std::int64_t l, std::int64_t d, const OracleLimits& limits) {
    if (l < 1 || d < 1) {
        throw std::invalid_argument{"l and d must be >= 1"};
    }
    if (l > limits.cap(d)) {
        throw std::invalid_argument{"oracle cap exceeded"};
    }
    const CostParams params = model_params(d);
    std::vector<Candidate> choices;
    const std::vector<std::int64_t> best = best_times(l, params, &choices);

    OracleResult result;
    result.l = l;
    result.d = d;
    result.optimal_time = best[static_cast<std::size_t>(l)];
    result.witness = build_witness(l, choices, best);
    return result;
}

bool full_enumeration_check(std::int64_t l, std::int64_t d) {
    if (l < 1 || d < 1) {
        throw std::invalid_argument{"l and d must be >= 1"};
    }
    if (l > 8) {
        throw std::invalid_argument{"full enumeration is limited to l <= 8"};
    }
    const CostParams params = model_params(d);
    const std::vector<std::int64_t> pruned = best_times(l, params, nullptr);

    // Unpruned: items in any order, each either one block or a subtree of
    // some smaller size whose time is itself the unpruned minimum. The only
    // exclusion is the size-n single-subtree input, which merely re-hashes.
    std::vector<std::int64_t> full(static_cast<std::size_t>(l) + 1, 0);
    std::vector<StreamItem> seq;
    for (std::int64_t n = 1; n <= l; ++n) {
        std::int64_t best_n = -1;
        std::function<void(std::int64_t)> extend = [&](std::int64_t remaining) {
            if (remaining == 0) {
                const std::int64_t t = absorb_finish_time(seq, params);
                if (best_n < 0 || t < best_n) {
                    best_n = t;
                }
                return;
            }
            seq.push_back(StreamItem::block(params.block_bits()));
            extend(remaining - 1);
            seq.pop_back();
            const std::int64_t max_sub = seq.empty() && remaining == n ? n - 1 : remaining;
            for (std::int64_t s = 2; s <= max_sub; ++s) {
                seq.push_back(
                    StreamItem::chaining_value(params.digest_bits, full[static_cast<std::size_t>(s)]));
                extend(remaining - s);
                seq.pop_back();
            }
        };
        extend(n);
        full[static_cast<std::size_t>(n)] = best_n;
        if (best_n != pruned[static_cast<std::size_t>(n)]) {
            return false;
        }
    }
    return true;
}

namespace {

std::int64_t witness_size(const WitnessNode& node) {
    std::int64_t size = node.front_blocks;
    for (const WitnessNode& child : node.children) {
        size += witness_size(child);
    }
    return size;
}

} // namespace

TreeTopology witness_topology(const OracleResult& result) {
    // Pre-order block assignment: a node takes the next front_blocks indices,
    // then its children consume subsequent ranges in listed order.
    struct Builder {
        std::vector<TreeNode> nodes;
        std::int64_t next_block = 1;

        std::int64_t emit(const WitnessNode& w) {
            std::vector<InputRef> blocks;
            for (std::int64_t b = 0; b < w.front_blocks; ++b) {
                blocks.push_back(InputRef::block(next_block++));
            }
            std::vector<std::int64_t> child_ids;
            for (const WitnessNode& child : w.children) {
                child_ids.push_back(emit(child));
            }
            TreeNode node;
            node.id = static_cast<std::int64_t>(nodes.size());
            node.input = std::move(blocks);
            for (const std::int64_t cid : child_ids) {
                node.input.push_back(InputRef::child(cid));
            }
            nodes.push_back(std::move(node));
            return nodes.back().id;
        }
    };
    // emit() assigns block ranges on the way down and ids on the way up, so
    // block runs stay consecutive while ids are post-order, root last.
    Builder builder;
    builder.emit(result.witness);
    TreeTopology tree;
    tree.l = witness_size(result.witness);
    tree.d = result.d;
    tree.nodes = std::move(builder.nodes);
    tree.nodes.back().node_type = NodeType::Root;
    tree.height = 0;
    validate_topology(tree);
    return tree;
}

} // namespace lath
