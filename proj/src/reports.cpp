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

#include "lath/reports.hpp"

#include <stdexcept>

#include "lath/formulas.hpp"
#include "lath/intmath.hpp"
#include "lath/scheduler.hpp"

namespace lath {

BuilderSpec BuilderSpec::from_name(const std::string& name) {
    BuilderSpec spec;
    if (name == "height2") {
        spec.kind = Kind::Height2;
    } else if (name == "height2-opt") {
        spec.kind = Kind::Height2Opt;
    } else if (name == "unrestricted") {
        spec.kind = Kind::Unrestricted;
    } else if (name == "same-depth") {
        spec.kind = Kind::SameDepth;
    } else if (name == "bounded") {
        spec.kind = Kind::Bounded;
    } else {
        throw std::invalid_argument{"unknown builder: " + name};
    }
    return spec;
}

namespace {

TreeTopology single_node_tree(std::int64_t l, std::int64_t d) {
    TreeTopology tree;
    tree.l = l;
    tree.d = d;
    TreeNode node;
    node.id = 0;
    node.node_type = NodeType::Root;
    for (std::int64_t j = 1; j <= l; ++j) {
        node.input.push_back(InputRef::block(j));
    }
    tree.nodes.push_back(std::move(node));
    tree.height = 1;
    tree.level_sizes = {1};
    tree.level_arities = {l};
    validate_topology(tree);
    return tree;
}

std::int64_t effective_leaf_arity(const BuilderSpec& spec, std::int64_t l, std::int64_t d) {
    if (spec.leaf_arity == 0) {
        return select_leaf_arity(l, d).leaf_arity;
    }
    return spec.leaf_arity;
}

} // namespace

TreeTopology build_topology(const BuilderSpec& spec, std::int64_t l, std::int64_t d) {
    if (l == 1) {
        return single_node_tree(1, d);
    }
    switch (spec.kind) {
    case BuilderSpec::Kind::Height2: {
        TreeTopology tree = build_height2(l, false);
        tree.d = d;
        return tree;
    }
    case BuilderSpec::Kind::Height2Opt: {
        TreeTopology tree = build_height2(l, true);
        tree.d = d;
        return tree;
    }
    case BuilderSpec::Kind::Unrestricted:
        return build_unrestricted(l, d, effective_leaf_arity(spec, l, d));
    case BuilderSpec::Kind::SameDepth:
        return build_same_depth_base(l, spec.arity, d);
    case BuilderSpec::Kind::Bounded:
        if (spec.P < 1) {
            throw std::invalid_argument{"bounded builder requires --P"};
        }
        return build_bounded(l, d, spec.P);
    }
    throw std::logic_error{"unreachable"};
}

std::string builder_label(const BuilderSpec& spec, std::int64_t l, std::int64_t d) {
    switch (spec.kind) {
    case BuilderSpec::Kind::Height2:
        return "height2";
    case BuilderSpec::Kind::Height2Opt:
        return "height2-opt";
    case BuilderSpec::Kind::Unrestricted:
        return "unrestricted(b=" + std::to_string(l == 1 ? 1 : effective_leaf_arity(spec, l, d)) + ")";
    case BuilderSpec::Kind::SameDepth:
        return "same-depth(arity=" + std::to_string(spec.arity) + ")";
    case BuilderSpec::Kind::Bounded:
        return "bounded(P=" + std::to_string(spec.P) + ")";
    }
    return "?";
}

std::optional<std::int64_t> predicted_time(const BuilderSpec& spec, std::int64_t l, std::int64_t d) {
    if (l == 1) {
        return 1;
    }
    switch (spec.kind) {
    case BuilderSpec::Kind::Height2:
        return height2_k(l).time;
    case BuilderSpec::Kind::Height2Opt:
        return height2_optimized(l).time;
    case BuilderSpec::Kind::Unrestricted:
        return predict_unrestricted(l, d, effective_leaf_arity(spec, l, d)).time;
    case BuilderSpec::Kind::Bounded:
        return predict_bounded(l, d, spec.P).time;
    case BuilderSpec::Kind::SameDepth:
        return std::nullopt; // no closed form shipped; simulation reports it
    }
    return std::nullopt;
}

nlohmann::ordered_json predict_report(std::int64_t l, std::int64_t d,
                                      std::optional<std::int64_t> P) {
    nlohmann::ordered_json j;
    j["l"] = l;
    j["d"] = d;

    const Height2Plan h2 = height2_k(l);
    j["height2"] = {{"k", h2.k},
                    {"i", h2.i},
                    {"time", h2.time},
                    {"processors", h2.processors},
                    {"chunks", h2.chunk_sizes}};
    const Height2Plan opt = height2_optimized(l);
    j["height2_optimized"] = {{"k", opt.k},
                              {"i", opt.i},
                              {"time", opt.time},
                              {"processors", opt.processors},
                              {"chunks", opt.chunk_sizes}};

    const UnrestrictedPlan b2 = predict_unrestricted(l, d, 2);
    j["unrestricted_b2"] = {{"time", b2.time}, {"processors", b2.processors}};
    const UnrestrictedPlan sel = select_leaf_arity(l, d);
    j["selected_arity"] = {{"b", sel.leaf_arity},
                           {"time", sel.time},
                           {"processors", sel.processors}};
    j["ternary_derivation_time"] = ternary_derivation_time(l);

    if (P) {
        const BoundedPlan bp = predict_bounded(l, d, *P);
        j["bounded"] = {{"P", bp.requested_p}, {"effective_p", bp.p},   {"time", bp.time},
                        {"a", bp.a},           {"b_count", bp.b_count}, {"clamped", bp.clamped}};
    }
    return j;
}

nlohmann::ordered_json hash_report(const BitString& message, const std::string& file_label,
                                   std::int64_t d, std::int64_t digest_bits,
                                   const BuilderSpec& spec, ExecMode mode, int workers) {
    SpongeParams params{CostParams{d, digest_bits}, std::max<std::int64_t>(256, 2 * digest_bits), 8};
    params.capacity_bits += (64 - params.state_bits() % 64) % 64; // word-aligned state
    params.validate();
    if (message.bit_size() == 0) {
        throw std::invalid_argument{"empty file"};
    }
    const std::int64_t l = ceil_div(message.bit_size(), params.rate_bits());
    const TreeTopology tree = build_topology(spec, l, d);
    const PrefixStateTable table(params);

    ExecutionReport exec;
    switch (mode) {
    case ExecMode::Sequential:
        exec = hash_sequential(message, tree, table);
        break;
    case ExecMode::WorkerPool: {
        WorkerOptions opt;
        opt.workers = workers;
        exec = hash_workerpool(message, tree, table, opt);
        break;
    }
    case ExecMode::Lockstep:
        exec = hash_lockstep(message, tree, table);
        break;
    }
    const Schedule schedule = simulate(tree, params.cost, message.bit_size());

    nlohmann::ordered_json j;
    j["file"] = file_label;
    j["bytes"] = message.bit_size() / 8;
    j["l"] = l;
    j["d"] = d;
    j["digest_bits"] = digest_bits;
    j["builder"] = builder_label(spec, l, d);
    j["nodes"] = tree.node_count();
    const auto predicted = predicted_time(spec, l, d);
    if (predicted) {
        j["predicted_time"] = *predicted;
    } else {
        j["predicted_time"] = nullptr;
    }
    j["makespan"] = schedule.makespan;
    j["mode"] = mode == ExecMode::Sequential ? "sequential"
        : mode == ExecMode::WorkerPool       ? "pool"
                                             : "lockstep";
    if (mode == ExecMode::Lockstep) {
        j["lockstep_rounds"] = exec.lockstep_rounds;
    }
    j["total_calls"] = exec.total_calls;
    j["digest"] = to_hex(exec.digest);
    return j;
}

nlohmann::ordered_json verify_report(const std::vector<CheckResult>& checks) {
    nlohmann::ordered_json j;
    j["checks"] = nlohmann::ordered_json::array();
    bool all = true;
    for (const CheckResult& check : checks) {
        j["checks"].push_back(
            {{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
        all = all && check.pass;
    }
    j["pass"] = all;
    return j;
}

} // namespace lath
