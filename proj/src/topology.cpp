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

#include "lath/topology.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include <json.hpp>

#include "lath/formulas.hpp"
#include "lath/intmath.hpp"

namespace lath {

bool TreeNode::has_message_blocks() const {
    return std::any_of(input.begin(), input.end(),
                       [](const InputRef& r) { return r.kind == InputRef::Kind::Block; });
}

void validate_topology(const TreeTopology& tree) {
    if (tree.l < 1 || tree.d < 1) {
        throw std::invalid_argument{"topology: l and d must be >= 1"};
    }
    if (tree.nodes.empty()) {
        throw std::invalid_argument{"topology: no nodes"};
    }
    const std::int64_t n = tree.node_count();
    std::vector<int> block_seen(static_cast<std::size_t>(tree.l), 0);
    std::vector<int> referenced(static_cast<std::size_t>(n), 0);
    for (std::int64_t id = 0; id < n; ++id) {
        const TreeNode& node = tree.nodes[static_cast<std::size_t>(id)];
        if (node.id != id) {
            throw std::invalid_argument{"topology: node ids must equal their positions"};
        }
        if (node.input.empty()) {
            throw std::invalid_argument{"topology: empty node input"};
        }
        for (const InputRef& ref : node.input) {
            if (ref.kind == InputRef::Kind::Block) {
                if (ref.index < 1 || ref.index > tree.l) {
                    throw std::invalid_argument{"topology: block index out of range"};
                }
                ++block_seen[static_cast<std::size_t>(ref.index - 1)];
            } else {
                // post-order ids: children precede their parent
                if (ref.index < 0 || ref.index >= id) {
                    throw std::invalid_argument{"topology: child reference must point to an earlier node"};
                }
                ++referenced[static_cast<std::size_t>(ref.index)];
            }
        }
    }
    for (std::int64_t j = 0; j < tree.l; ++j) {
        if (block_seen[static_cast<std::size_t>(j)] != 1) {
            throw std::invalid_argument{"topology: every block must appear exactly once"};
        }
    }
    for (std::int64_t id = 0; id + 1 < n; ++id) {
        if (referenced[static_cast<std::size_t>(id)] != 1) {
            throw std::invalid_argument{"topology: every non-root node must feed exactly one parent"};
        }
    }
    if (referenced[static_cast<std::size_t>(n - 1)] != 0) {
        throw std::invalid_argument{"topology: root must not be referenced"};
    }
    for (std::int64_t id = 0; id < n; ++id) {
        const NodeType expected = id == n - 1 ? NodeType::Root : NodeType::Interior;
        if (tree.nodes[static_cast<std::size_t>(id)].node_type != expected) {
            throw std::invalid_argument{"topology: exactly the last node must be the root"};
        }
    }
}

namespace {

/// Mutable tree under construction: inputs indexed by temporary id.
struct ProtoTree {
    std::vector<std::vector<InputRef>> inputs;

    std::int64_t add(std::vector<InputRef> input) {
        inputs.push_back(std::move(input));
        return static_cast<std::int64_t>(inputs.size()) - 1;
    }
};

/// Renumbers temp ids into post-order (children before parents, input order)
/// and produces the final topology.
TreeTopology finalize(std::int64_t l, std::int64_t d, const ProtoTree& proto, std::int64_t root_temp) {
    std::vector<std::int64_t> order;
    order.reserve(proto.inputs.size());
    std::vector<std::int64_t> new_id(proto.inputs.size(), -1);
    std::function<void(std::int64_t)> visit = [&](std::int64_t t) {
        for (const InputRef& ref : proto.inputs[static_cast<std::size_t>(t)]) {
            if (ref.kind == InputRef::Kind::Child) {
                visit(ref.index);
            }
        }
        new_id[static_cast<std::size_t>(t)] = static_cast<std::int64_t>(order.size());
        order.push_back(t);
    };
    visit(root_temp);

    TreeTopology tree;
    tree.l = l;
    tree.d = d;
    tree.nodes.resize(order.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const std::int64_t temp = order[pos];
        TreeNode& node = tree.nodes[pos];
        node.id = static_cast<std::int64_t>(pos);
        node.node_type = temp == root_temp ? NodeType::Root : NodeType::Interior;
        node.input = proto.inputs[static_cast<std::size_t>(temp)];
        for (InputRef& ref : node.input) {
            if (ref.kind == InputRef::Kind::Child) {
                ref.index = new_id[static_cast<std::size_t>(ref.index)];
            }
        }
    }
    return tree;
}

/// Level-structured base tree: level 1 gathers blocks in groups of
/// leaf_arity, upper levels group nodes by upper_arity, rightmost groups
/// possibly smaller. All blocks end up at the same depth.
TreeTopology build_base(std::int64_t l, std::int64_t leaf_arity, std::int64_t upper_arity, std::int64_t d) {
    ProtoTree proto;
    std::vector<std::int64_t> level; // temp ids, left to right
    std::vector<std::int64_t> level_sizes;
    std::vector<std::int64_t> level_arities;

    const std::int64_t n1 = ceil_div(l, leaf_arity);
    for (std::int64_t t = 0; t < n1; ++t) {
        std::vector<InputRef> input;
        for (std::int64_t j = t * leaf_arity + 1; j <= std::min((t + 1) * leaf_arity, l); ++j) {
            input.push_back(InputRef::block(j));
        }
        level.push_back(proto.add(std::move(input)));
    }
    level_sizes.push_back(n1);
    level_arities.push_back(std::min(leaf_arity, l));

    while (static_cast<std::int64_t>(level.size()) > 1) {
        const std::int64_t prev = static_cast<std::int64_t>(level.size());
        std::vector<std::int64_t> next;
        for (std::int64_t t = 0; t < ceil_div(prev, upper_arity); ++t) {
            std::vector<InputRef> input;
            for (std::int64_t c = t * upper_arity; c < std::min((t + 1) * upper_arity, prev); ++c) {
                input.push_back(InputRef::child(level[static_cast<std::size_t>(c)]));
            }
            next.push_back(proto.add(std::move(input)));
        }
        level_sizes.push_back(static_cast<std::int64_t>(next.size()));
        level_arities.push_back(std::min(upper_arity, prev));
        level = std::move(next);
    }

    TreeTopology tree = finalize(l, d, proto, level.front());
    tree.height = static_cast<std::int64_t>(level_sizes.size());
    tree.level_sizes = std::move(level_sizes);
    tree.level_arities = std::move(level_arities);
    validate_topology(tree);
    return tree;
}

} // namespace

TreeTopology build_height2(std::int64_t l, bool optimize_processors) {
    const Height2Plan plan = optimize_processors ? height2_optimized(l) : height2_k(l);
    ProtoTree proto;
    const std::int64_t front = plan.chunk_sizes.front() - (plan.folded_last_block ? 1 : 0);

    std::vector<InputRef> root_input;
    for (std::int64_t j = 1; j <= front; ++j) {
        root_input.push_back(InputRef::block(j));
    }
    if (plan.folded_last_block) {
        root_input.push_back(InputRef::block(l));
    }
    std::int64_t next_block = front + 1;
    std::vector<std::int64_t> children;
    for (std::size_t t = 1; t < plan.chunk_sizes.size(); ++t) {
        std::vector<InputRef> input;
        for (std::int64_t j = 0; j < plan.chunk_sizes[t]; ++j) {
            input.push_back(InputRef::block(next_block++));
        }
        children.push_back(proto.add(std::move(input)));
    }
    for (const std::int64_t child : children) {
        root_input.push_back(InputRef::child(child));
    }
    const std::int64_t root = proto.add(std::move(root_input));

    // The height-2 layout is the d = 1 construction.
    TreeTopology tree = finalize(l, 1, proto, root);
    tree.height = children.empty() ? 1 : 2;
    if (children.empty()) {
        tree.level_sizes = {1};
        tree.level_arities = {l};
    } else {
        std::int64_t max_chunk = 0;
        for (std::size_t t = 1; t < plan.chunk_sizes.size(); ++t) {
            max_chunk = std::max(max_chunk, plan.chunk_sizes[t]);
        }
        tree.level_sizes = {static_cast<std::int64_t>(children.size()), 1};
        tree.level_arities = {max_chunk, static_cast<std::int64_t>(tree.nodes.back().input.size())};
    }
    validate_topology(tree);
    return tree;
}

TreeTopology build_same_depth_base(std::int64_t l, std::int64_t arity, std::int64_t d) {
    if (l < 2) {
        throw std::invalid_argument{"message too short for a tree"};
    }
    if (arity < 2) {
        throw std::invalid_argument{"arity must be >= 2"};
    }
    return build_base(l, arity, arity, d);
}

TreeTopology inline_leftmost_transform(const TreeTopology& tree) {
    validate_topology(tree);
    const std::int64_t n = tree.node_count();

    // Recover the level of every node; reject trees that are not
    // level-structured with all blocks at the bottom.
    std::vector<std::int64_t> level(static_cast<std::size_t>(n), 0);
    for (std::int64_t id = 0; id < n; ++id) { // children first (post-order ids)
        const TreeNode& node = tree.nodes[static_cast<std::size_t>(id)];
        const bool leaf = node.input.front().kind == InputRef::Kind::Block;
        if (leaf) {
            for (const InputRef& ref : node.input) {
                if (ref.kind != InputRef::Kind::Block) {
                    throw std::invalid_argument{"transform requires same-depth input"};
                }
            }
            level[static_cast<std::size_t>(id)] = 1;
        } else {
            std::int64_t child_level = 0;
            for (const InputRef& ref : node.input) {
                if (ref.kind != InputRef::Kind::Child) {
                    throw std::invalid_argument{"transform requires same-depth input"};
                }
                const std::int64_t cl = level[static_cast<std::size_t>(ref.index)];
                if (child_level != 0 && cl != child_level) {
                    throw std::invalid_argument{"transform requires same-depth input"};
                }
                child_level = cl;
            }
            level[static_cast<std::size_t>(id)] = child_level + 1;
        }
    }
    const std::int64_t height = level[static_cast<std::size_t>(tree.root_id())];

    ProtoTree proto;
    proto.inputs.resize(static_cast<std::size_t>(n));
    for (std::int64_t id = 0; id < n; ++id) {
        proto.inputs[static_cast<std::size_t>(id)] = tree.nodes[static_cast<std::size_t>(id)].input;
    }
    // Bottom-up: when a level-i node inlines its leftmost child, that child
    // (level i-1) has already been transformed, so its whole input — blocks
    // first, then chaining values of ever-deeper subtrees — moves up intact.
    for (std::int64_t lev = 2; lev <= height; ++lev) {
        for (std::int64_t id = 0; id < n; ++id) {
            if (level[static_cast<std::size_t>(id)] != lev) {
                continue;
            }
            auto& input = proto.inputs[static_cast<std::size_t>(id)];
            const std::int64_t leftmost = input.front().index;
            auto& donor = proto.inputs[static_cast<std::size_t>(leftmost)];
            std::vector<InputRef> merged;
            merged.reserve(donor.size() + input.size() - 1);
            merged.insert(merged.end(), donor.begin(), donor.end());
            merged.insert(merged.end(), input.begin() + 1, input.end());
            input = std::move(merged);
            donor.clear(); // discarded; finalize never visits it
        }
    }

    TreeTopology result = finalize(tree.l, tree.d, proto, tree.root_id());
    result.height = height;
    result.level_sizes = tree.level_sizes;
    result.level_arities = tree.level_arities;
    if (result.level_sizes.empty()) {
        for (std::int64_t lev = 1; lev <= height; ++lev) {
            result.level_sizes.push_back(
                std::count(level.begin(), level.end(), lev));
        }
    }
    validate_topology(result);
    return result;
}

TreeTopology build_unrestricted(std::int64_t l, std::int64_t d, std::int64_t b) {
    if (b != 2 && b != 3) {
        throw std::invalid_argument{"leaf arity must be 2 or 3"};
    }
    if (l < 2) {
        throw std::invalid_argument{"message too short for a tree"};
    }
    if (d < 1) {
        throw std::invalid_argument{"d must be >= 1"};
    }
    return inline_leftmost_transform(build_base(l, b, d + 1, d));
}

TreeTopology build_bounded(std::int64_t l, std::int64_t d, std::int64_t P) {
    const BoundedPlan plan = predict_bounded(l, d, P);
    if (plan.p == 1) {
        ProtoTree proto;
        std::vector<InputRef> input;
        for (std::int64_t j = 1; j <= l; ++j) {
            input.push_back(InputRef::block(j));
        }
        const std::int64_t root = proto.add(std::move(input));
        TreeTopology tree = finalize(l, d, proto, root);
        tree.height = 1;
        tree.level_sizes = {1};
        tree.level_arities = {l};
        validate_topology(tree);
        return tree;
    }

    TreeTopology tree = build_unrestricted(2 * plan.p, d, 2);
    // Chunk t (1-based, in block order) has ceil(l/p) blocks for t <= a,
    // floor(l/p) after.
    const std::int64_t hi = ceil_div(l, plan.p);
    const std::int64_t lo = l / plan.p;
    std::vector<std::int64_t> chunk_start(static_cast<std::size_t>(plan.p) + 1, 0);
    std::int64_t start = 1;
    for (std::int64_t t = 1; t <= plan.p; ++t) {
        chunk_start[static_cast<std::size_t>(t)] = start;
        start += t <= plan.a ? hi : lo;
    }
    for (TreeNode& node : tree.nodes) {
        std::int64_t first_block = 0;
        std::vector<InputRef> rest;
        for (const InputRef& ref : node.input) {
            if (ref.kind == InputRef::Kind::Block) {
                if (first_block == 0 || ref.index < first_block) {
                    first_block = ref.index;
                }
            } else {
                rest.push_back(ref);
            }
        }
        const std::int64_t t = (first_block + 1) / 2; // shape runs are (2t-1, 2t)
        const std::int64_t len = t <= plan.a ? hi : lo;
        std::vector<InputRef> input;
        for (std::int64_t j = 0; j < len; ++j) {
            input.push_back(InputRef::block(chunk_start[static_cast<std::size_t>(t)] + j));
        }
        input.insert(input.end(), rest.begin(), rest.end());
        node.input = std::move(input);
    }
    tree.l = l;
    validate_topology(tree);
    return tree;
}

namespace {

std::string input_ref_string(const InputRef& ref) {
    return (ref.kind == InputRef::Kind::Block ? "m" : "n") + std::to_string(ref.index);
}

std::string export_dot(const TreeTopology& tree) {
    std::string out = "digraph lath_tree {\n  rankdir=BT;\n";
    for (std::int64_t j = 1; j <= tree.l; ++j) {
        out += "  m" + std::to_string(j) + " [shape=box];\n";
    }
    for (const TreeNode& node : tree.nodes) {
        out += "  n" + std::to_string(node.id) + " [shape=ellipse";
        if (node.node_type == NodeType::Root) {
            out += ", label=\"n" + std::to_string(node.id) + " (root)\"";
        }
        out += "];\n";
    }
    for (const TreeNode& node : tree.nodes) {
        for (const InputRef& ref : node.input) {
            out += "  " + input_ref_string(ref) + " -> n" + std::to_string(node.id) + ";\n";
        }
    }
    out += "}\n";
    return out;
}

} // namespace

std::string export_topology(const TreeTopology& tree, ExportFormat format) {
    validate_topology(tree);
    if (format == ExportFormat::Dot) {
        return export_dot(tree);
    }
    nlohmann::ordered_json j;
    j["l"] = tree.l;
    j["d"] = tree.d;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const TreeNode& node : tree.nodes) {
        nlohmann::ordered_json nj;
        nj["id"] = node.id;
        nj["input"] = nlohmann::ordered_json::array();
        for (const InputRef& ref : node.input) {
            nj["input"].push_back(input_ref_string(ref));
        }
        nj["node_type"] = node.node_type == NodeType::Root ? "root" : "interior";
        j["nodes"].push_back(std::move(nj));
    }
    return j.dump(2) + "\n";
}

TreeTopology parse_topology(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    TreeTopology tree;
    tree.l = j.at("l").get<std::int64_t>();
    tree.d = j.at("d").get<std::int64_t>();
    std::vector<TreeNode> nodes;
    for (const auto& nj : j.at("nodes")) {
        TreeNode node;
        node.id = nj.at("id").get<std::int64_t>();
        const std::string type = nj.at("node_type").get<std::string>();
        if (type != "root" && type != "interior") {
            throw std::invalid_argument{"topology: unknown node_type"};
        }
        node.node_type = type == "root" ? NodeType::Root : NodeType::Interior;
        for (const auto& entry : nj.at("input")) {
            const std::string s = entry.get<std::string>();
            if (s.size() < 2 || (s[0] != 'm' && s[0] != 'n')) {
                throw std::invalid_argument{"topology: bad input reference"};
            }
            const std::int64_t idx = std::stoll(s.substr(1));
            node.input.push_back(s[0] == 'm' ? InputRef::block(idx) : InputRef::child(idx));
        }
        nodes.push_back(std::move(node));
    }
    std::sort(nodes.begin(), nodes.end(),
              [](const TreeNode& a, const TreeNode& b) { return a.id < b.id; });
    tree.nodes = std::move(nodes);
    validate_topology(tree);

    // Structural height for metadata; the exported schema does not carry it.
    std::vector<std::int64_t> depth(tree.nodes.size(), 1);
    for (const TreeNode& node : tree.nodes) {
        for (const InputRef& ref : node.input) {
            if (ref.kind == InputRef::Kind::Child) {
                depth[static_cast<std::size_t>(node.id)] =
                    std::max(depth[static_cast<std::size_t>(node.id)],
                             depth[static_cast<std::size_t>(ref.index)] + 1);
            }
        }
    }
    tree.height = depth[static_cast<std::size_t>(tree.root_id())];
    return tree;
}

} // namespace lath
