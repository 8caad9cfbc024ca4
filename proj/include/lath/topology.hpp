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

namespace lath {

/// One element of a node's ordered input: the j-th message block (1-based)
/// or the chaining value of another node.
struct InputRef {
    enum class Kind { Block, Child };
    Kind kind = Kind::Block;
    std::int64_t index = 0; ///< block index j in 1..l, or node id

    static InputRef block(std::int64_t j) { return {Kind::Block, j}; }
    static InputRef child(std::int64_t id) { return {Kind::Child, id}; }
    bool operator==(const InputRef&) const = default;
};

enum class NodeType { Root, Interior };

/// A node is the image of the inner function applied to the concatenation of
/// its input items. Within a node, message blocks always precede chaining
/// values, and chaining values are ordered by the depth of their producing
/// subtree (shallowest first).
struct TreeNode {
    std::int64_t id = 0;
    std::vector<InputRef> input;
    NodeType node_type = NodeType::Interior;

    bool has_message_blocks() const;
    bool operator==(const TreeNode&) const = default;
};

/// The hash DAG. Node ids are post-order positions (children before parents,
/// in input order), so ascending id is a valid evaluation order and the root
/// is the last node. Every block index 1..l appears exactly once across all
/// node inputs; the number of nodes equals the processor count.
struct TreeTopology {
    std::int64_t l = 0;
    std::int64_t d = 1;
    std::vector<TreeNode> nodes; ///< position == id

    // Construction metadata (not exported, not part of equality).
    std::int64_t height = 0;
    std::vector<std::int64_t> level_sizes;   ///< nodes per level of the base tree
    std::vector<std::int64_t> level_arities; ///< greatest node arity per level

    std::int64_t root_id() const { return static_cast<std::int64_t>(nodes.size()) - 1; }
    const TreeNode& node(std::int64_t id) const { return nodes[static_cast<std::size_t>(id)]; }
    std::int64_t node_count() const { return static_cast<std::int64_t>(nodes.size()); }

    bool operator==(const TreeTopology& other) const {
        return l == other.l && d == other.d && nodes == other.nodes;
    }
};

/// Structural checks: non-empty inputs, exact block coverage, valid child
/// references each used once, a single root, and root-reachability of every
/// node. Throws std::invalid_argument on violation.
void validate_topology(const TreeTopology& tree);

/// Height-2 tree: the root hashes the first chunk of blocks followed by the
/// children's chaining values; child t hashes the t+1-th chunk. Chunks come
/// from height2_k, or height2_optimized when optimize_processors is set.
TreeTopology build_height2(std::int64_t l, bool optimize_processors = false);

/// Classic tree with every message block at depth h = ceil(log_arity l);
/// level i has ceil(l / arity^i) nodes, the rightmost possibly smaller.
/// Requires l >= 2, arity >= 2.
TreeTopology build_same_depth_base(std::int64_t l, std::int64_t arity, std::int64_t d);

/// For each level from 2 up to the height and each node on that level,
/// discards the node's leftmost child (a single child counts as leftmost)
/// and splices the child's input at the front of the node's own input. The
/// result has leaves at all levels; exactly the base tree's level-1 nodes
/// survive. Requires a level-structured input tree ("transform requires
/// same-depth input").
TreeTopology inline_leftmost_transform(const TreeTopology& tree);

/// Base tree whose level 1 gathers blocks in groups of b and whose upper
/// levels are (d+1)-ary, then inline_leftmost_transform applied. The result
/// simulates to exactly predict_unrestricted(l, d, b).time using ceil(l/b)
/// nodes. Requires l >= 2, d >= 1, b in {2, 3}.
TreeTopology build_unrestricted(std::int64_t l, std::int64_t d, std::int64_t b);

/// The build_unrestricted(2P, d, 2) shape with each node's 2-block run
/// replaced by ceil(l/P) or floor(l/P) consecutive blocks according to
/// predict_bounded's split. P > l builds with P = l.
TreeTopology build_bounded(std::int64_t l, std::int64_t d, std::int64_t P);

enum class ExportFormat { Json, Dot };

/// JSON schema (stable field order: l, d, nodes[id, input[], node_type];
/// inputs rendered as "m<j>" / "n<id>") or a DOT digraph with block leaves
/// as boxes and nodes as ellipses. Byte-stable for a given topology.
std::string export_topology(const TreeTopology& tree, ExportFormat format);

/// Inverse of the JSON export; validates the result.
TreeTopology parse_topology(const std::string& json_text);

} // namespace lath
