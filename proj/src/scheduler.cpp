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

#include "lath/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

#include "lath/intmath.hpp"

namespace lath {

std::int64_t Schedule::total_calls() const {
    std::int64_t total = 0;
    for (const auto& t : timelines) {
        total += static_cast<std::int64_t>(t.size());
    }
    return total;
}

std::vector<StreamItem> node_stream(const TreeNode& node, const TreeTopology& tree,
                                    const CostParams& params,
                                    const std::vector<std::int64_t>& child_finish,
                                    std::int64_t message_bits) {
    const std::int64_t total_bits = message_bits < 0 ? tree.l * params.block_bits() : message_bits;
    std::vector<StreamItem> items;
    items.reserve(node.input.size());
    for (const InputRef& ref : node.input) {
        if (ref.kind == InputRef::Kind::Block) {
            const std::int64_t len =
                std::min(params.block_bits(), total_bits - (ref.index - 1) * params.block_bits());
            items.push_back(StreamItem::block(len));
        } else {
            items.push_back(StreamItem::chaining_value(
                params.digest_bits, child_finish[static_cast<std::size_t>(ref.index)]));
        }
    }
    return items;
}

namespace {

void check_simulation_input(const TreeTopology& tree, const CostParams& params,
                            std::int64_t message_bits) {
    params.validate();
    validate_topology(tree); // rejects cyclic references
    if (tree.d != params.d) {
        throw std::invalid_argument{"mismatched d between topology and params"};
    }
    if (message_bits >= 0) {
        const std::int64_t cap = tree.l * params.block_bits();
        if (message_bits > cap || message_bits <= cap - params.block_bits()) {
            throw std::invalid_argument{"message size mismatch"};
        }
    }
}

} // namespace

Schedule simulate(const TreeTopology& tree, const CostParams& params, std::int64_t message_bits) {
    check_simulation_input(tree, params, message_bits);
    const std::int64_t n = tree.node_count();

    // Per-node call plans. Chaining-value ready times are not needed for the
    // plan, only bit lengths, so a zero-filled finish vector is fine here.
    const std::vector<std::int64_t> zeros(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<StreamItem>> items(static_cast<std::size_t>(n));
    std::vector<std::vector<CallSpan>> plans(static_cast<std::size_t>(n));
    std::int64_t grand_total_calls = 0;
    for (std::int64_t id = 0; id < n; ++id) {
        items[static_cast<std::size_t>(id)] =
            node_stream(tree.node(id), tree, params, zeros, message_bits);
        plans[static_cast<std::size_t>(id)] = call_plan(items[static_cast<std::size_t>(id)], params);
        grand_total_calls += static_cast<std::int64_t>(plans[static_cast<std::size_t>(id)].size());
    }

    Schedule schedule;
    schedule.processor_count = n;
    schedule.timelines.resize(static_cast<std::size_t>(n));
    schedule.node_finish.assign(static_cast<std::size_t>(n), -1);

    std::vector<std::size_t> next_call(static_cast<std::size_t>(n), 0);
    std::int64_t round = 0;
    while (schedule.node_finish[static_cast<std::size_t>(tree.root_id())] < 0) {
        if (round > grand_total_calls + n + 1) {
            throw std::logic_error{"simulation failed to make progress"};
        }
        ++round;
        for (std::int64_t id = 0; id < n; ++id) {
            const auto uid = static_cast<std::size_t>(id);
            if (next_call[uid] >= plans[uid].size()) {
                continue;
            }
            const CallSpan& span = plans[uid][next_call[uid]];
            bool available = true;
            for (std::size_t i = span.first_item; i <= span.last_item; ++i) {
                const StreamItem& item = items[uid][i];
                if (item.kind == ItemKind::ChainingValue) {
                    const std::int64_t child = tree.node(id).input[i].index;
                    const std::int64_t f = schedule.node_finish[static_cast<std::size_t>(child)];
                    // strictly-earlier-round production; same-round values are
                    // excluded even though children carry smaller ids
                    if (f < 0 || f > round - 1) {
                        available = false;
                        break;
                    }
                }
            }
            if (!available) {
                continue;
            }
            schedule.timelines[uid].push_back(
                {round, static_cast<std::int64_t>(next_call[uid]) + 1, span.first_item, span.last_item});
            ++next_call[uid];
            if (next_call[uid] == plans[uid].size()) {
                schedule.node_finish[uid] = round;
            }
        }
    }
    schedule.makespan = *std::max_element(schedule.node_finish.begin(), schedule.node_finish.end());

    // Cross-check: the lockstep rounds must equal the stream-rule finish
    // times computed bottom-up with ready(chaining value) = child's finish.
    for (std::int64_t id = 0; id < n; ++id) {
        const auto stream =
            node_stream(tree.node(id), tree, params, schedule.node_finish, message_bits);
        if (absorb_finish_time(stream, params) != schedule.node_finish[static_cast<std::size_t>(id)]) {
            throw std::logic_error{"simulate/stream disagreement"};
        }
    }
    return schedule;
}

std::vector<std::int64_t> critical_path(const Schedule& schedule, const TreeTopology& tree,
                                        const CostParams& params, std::int64_t message_bits) {
    std::vector<std::int64_t> path;
    std::int64_t id = tree.root_id();
    while (true) {
        path.push_back(id);
        const auto uid = static_cast<std::size_t>(id);
        const auto& calls = schedule.timelines[uid];
        const auto items = node_stream(tree.node(id), tree, params, schedule.node_finish, message_bits);

        // Walk backwards through this node's dense tail of calls; the first
        // call whose start coincides with a chaining value's ready time hands
        // the chain to that child.
        std::int64_t descend_to = -1;
        for (std::size_t c = calls.size(); c-- > 0;) {
            const CallRecord& call = calls[c];
            const std::int64_t start = call.round - 1;
            for (std::size_t i = call.first_item; i <= call.last_item; ++i) {
                if (items[i].kind == ItemKind::ChainingValue && items[i].ready_time == start) {
                    descend_to = tree.node(id).input[i].index;
                    break;
                }
            }
            if (descend_to >= 0) {
                break;
            }
            // not bound by an input: tight only if glued to the previous call
            if (c > 0 && calls[c - 1].round != call.round - 1) {
                break;
            }
        }
        if (descend_to < 0) {
            return path;
        }
        id = descend_to;
    }
}

std::string schedule_to_json(const Schedule& schedule) {
    nlohmann::ordered_json j;
    j["makespan"] = schedule.makespan;
    j["processor_count"] = schedule.processor_count;
    j["processors"] = nlohmann::ordered_json::array();
    for (std::size_t id = 0; id < schedule.timelines.size(); ++id) {
        nlohmann::ordered_json pj;
        pj["node"] = id;
        pj["finish"] = schedule.node_finish[id];
        pj["calls"] = nlohmann::ordered_json::array();
        for (const CallRecord& call : schedule.timelines[id]) {
            pj["calls"].push_back({{"round", call.round},
                                   {"call", call.call_index},
                                   {"items", {call.first_item, call.last_item}}});
        }
        j["processors"].push_back(std::move(pj));
    }
    // rounds x processors matrix; 0 marks an idle slot
    j["matrix"] = nlohmann::ordered_json::array();
    for (std::int64_t round = 1; round <= schedule.makespan; ++round) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (const auto& timeline : schedule.timelines) {
            std::int64_t cell = 0;
            for (const CallRecord& call : timeline) {
                if (call.round == round) {
                    cell = call.call_index;
                    break;
                }
            }
            row.push_back(cell);
        }
        j["matrix"].push_back(std::move(row));
    }
    return j.dump(2) + "\n";
}

std::string schedule_gantt(const Schedule& schedule) {
    const auto width = std::to_string(schedule.makespan).size() + 1;
    auto pad = [width](const std::string& s) {
        return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
    };
    std::string out = "round     ";
    for (std::int64_t r = 1; r <= schedule.makespan; ++r) {
        out += pad(std::to_string(r));
    }
    out += "\n";
    for (std::size_t id = 0; id < schedule.timelines.size(); ++id) {
        std::string row = "P" + std::to_string(id);
        row.resize(10, ' ');
        std::vector<std::string> cells(static_cast<std::size_t>(schedule.makespan), ".");
        for (const CallRecord& call : schedule.timelines[id]) {
            cells[static_cast<std::size_t>(call.round - 1)] = std::to_string(call.call_index);
        }
        for (std::int64_t r = schedule.node_finish[id]; r < schedule.makespan; ++r) {
            cells[static_cast<std::size_t>(r)] = " ";
        }
        for (const auto& cell : cells) {
            row += pad(cell);
        }
        out += row + "\n";
    }
    return out;
}

} // namespace lath
