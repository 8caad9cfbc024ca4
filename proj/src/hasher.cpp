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

#include "lath/hasher.hpp"

#include <atomic>
#include <barrier>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <thread>

#include "lath/scheduler.hpp"

namespace lath {

namespace {

void check_hash_input(const BitString& message, const TreeTopology& tree,
                      const PrefixStateTable& table) {
    validate_topology(tree);
    const CostParams& cost = table.params().cost;
    if (tree.d != cost.d) {
        throw std::invalid_argument{"mismatched d between topology and params"};
    }
    const std::int64_t cap = tree.l * cost.block_bits();
    if (message.bit_size() > cap || message.bit_size() <= cap - cost.block_bits()) {
        throw std::invalid_argument{"message size mismatch"};
    }
}

struct BlockSpan {
    std::int64_t begin = 0;
    std::int64_t len = 0;
};

BlockSpan block_span(std::int64_t block_index, const BitString& message, const CostParams& cost) {
    BlockSpan span;
    span.begin = (block_index - 1) * cost.block_bits();
    span.len = std::min(cost.block_bits(), message.bit_size() - span.begin);
    return span;
}

} // namespace

ExecutionReport hash_sequential(const BitString& message, const TreeTopology& tree,
                                const PrefixStateTable& table) {
    check_hash_input(message, tree, table);
    ExecutionReport report;
    report.mode = ExecMode::Sequential;
    report.per_node_calls.resize(static_cast<std::size_t>(tree.node_count()), 0);
    std::vector<Digest> digests(static_cast<std::size_t>(tree.node_count()));
    for (const TreeNode& node : tree.nodes) { // post-order ids: children first
        VilResult r = hash_node_counted(node, digests, message, table);
        report.per_node_calls[static_cast<std::size_t>(node.id)] = r.calls;
        report.total_calls += r.calls;
        digests[static_cast<std::size_t>(node.id)] = std::move(r.digest);
    }
    report.digest = digests.back();
    return report;
}

namespace {

/// One node task of the worker pool. A task owns its cursor and hasher while
/// `running`; a completing child hands a blocked parent back to the queue.
struct PoolNode {
    std::mutex m;
    bool queued = false;
    bool running = false;
    std::int64_t waiting_on = -1;
    std::size_t cursor = 0;
    std::optional<VilHasher> hasher;
    Digest digest;
    std::int64_t calls = 0;
    std::atomic<bool> done{false};
};

struct Pool {
    const BitString& message;
    const TreeTopology& tree;
    const PrefixStateTable& table;
    std::vector<PoolNode> nodes;
    std::vector<std::int64_t> parent_of;

    std::mutex queue_m;
    std::condition_variable queue_cv;
    std::deque<std::int64_t> queue;
    bool shutdown = false;

    std::mutex error_m;
    std::exception_ptr error;

    Pool(const BitString& msg, const TreeTopology& t, const PrefixStateTable& tbl)
        : message(msg), tree(t), table(tbl), nodes(static_cast<std::size_t>(t.node_count())),
          parent_of(static_cast<std::size_t>(t.node_count()), -1) {
        for (const TreeNode& node : tree.nodes) {
            for (const InputRef& ref : node.input) {
                if (ref.kind == InputRef::Kind::Child) {
                    parent_of[static_cast<std::size_t>(ref.index)] = node.id;
                }
            }
        }
    }

    void enqueue(std::int64_t id) {
        {
            const std::lock_guard<std::mutex> lock(queue_m);
            queue.push_back(id);
        }
        queue_cv.notify_one();
    }

    void stop_all() {
        {
            const std::lock_guard<std::mutex> lock(queue_m);
            shutdown = true;
        }
        queue_cv.notify_all();
    }

    void complete(std::int64_t id) {
        PoolNode& me = nodes[static_cast<std::size_t>(id)];
        me.done.store(true, std::memory_order_release);
        if (id == tree.root_id()) {
            stop_all();
            return;
        }
        const std::int64_t parent = parent_of[static_cast<std::size_t>(id)];
        PoolNode& p = nodes[static_cast<std::size_t>(parent)];
        bool wake = false;
        {
            const std::lock_guard<std::mutex> lock(p.m);
            if (p.waiting_on == id) {
                p.waiting_on = -1;
                if (!p.running && !p.queued) {
                    p.queued = true;
                    wake = true;
                }
            }
        }
        if (wake) {
            enqueue(parent);
        }
    }

    void run(std::int64_t id) {
        PoolNode& me = nodes[static_cast<std::size_t>(id)];
        {
            const std::lock_guard<std::mutex> lock(me.m);
            me.running = true;
            me.queued = false;
        }
        const TreeNode& node = tree.node(id);
        if (!me.hasher) {
            me.hasher.emplace(NodeTypeCode::for_node(node), table);
        }
        while (true) {
            if (me.cursor == node.input.size()) {
                me.digest = me.hasher->finalize();
                me.calls = static_cast<std::int64_t>(me.hasher->permute_calls());
                {
                    const std::lock_guard<std::mutex> lock(me.m);
                    me.running = false;
                }
                complete(id);
                return;
            }
            const InputRef& ref = node.input[me.cursor];
            if (ref.kind == InputRef::Kind::Block) {
                const BlockSpan span = block_span(ref.index, message, table.params().cost);
                me.hasher->update(message, span.begin, span.len);
                ++me.cursor;
                continue;
            }
            PoolNode& child = nodes[static_cast<std::size_t>(ref.index)];
            if (child.done.load(std::memory_order_acquire)) {
                me.hasher->update(BitString::from_bytes(child.digest));
                ++me.cursor;
                continue;
            }
            // Park on this child, then re-check: the child may have finished
            // in between, in which case either we resume ourselves or its
            // completer has already re-queued us.
            {
                const std::lock_guard<std::mutex> lock(me.m);
                me.waiting_on = ref.index;
                me.running = false;
            }
            if (!child.done.load(std::memory_order_acquire)) {
                return;
            }
            {
                const std::lock_guard<std::mutex> lock(me.m);
                if (me.waiting_on != ref.index) {
                    return; // completer won the race and queued us
                }
                me.waiting_on = -1;
                me.running = true;
            }
        }
    }

    void worker(std::uint32_t jitter_max_us, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        while (true) {
            std::int64_t id;
            {
                std::unique_lock<std::mutex> lock(queue_m);
                queue_cv.wait(lock, [&] { return shutdown || !queue.empty(); });
                if (shutdown) {
                    return;
                }
                id = queue.front();
                queue.pop_front();
            }
            if (jitter_max_us > 0) {
                std::this_thread::sleep_for(std::chrono::microseconds(rng() % (jitter_max_us + 1)));
            }
            try {
                run(id);
            } catch (...) {
                {
                    const std::lock_guard<std::mutex> lock(error_m);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
                stop_all();
                return;
            }
        }
    }
};

} // namespace

ExecutionReport hash_workerpool(const BitString& message, const TreeTopology& tree,
                                const PrefixStateTable& table, const WorkerOptions& options) {
    check_hash_input(message, tree, table);
    if (options.workers < 1) {
        throw std::invalid_argument{"at least one worker required"};
    }
    Pool pool(message, tree, table);
    for (std::int64_t id = 0; id < tree.node_count(); ++id) {
        pool.nodes[static_cast<std::size_t>(id)].queued = true;
        pool.queue.push_back(id);
    }
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(options.workers));
    for (int w = 0; w < options.workers; ++w) {
        threads.emplace_back([&pool, &options, w] {
            pool.worker(options.jitter_max_us,
                        options.jitter_seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(w + 1));
        });
    }
    for (std::thread& t : threads) {
        t.join();
    }
    if (pool.error) {
        std::rethrow_exception(pool.error);
    }

    ExecutionReport report;
    report.mode = ExecMode::WorkerPool;
    report.workers_used = options.workers;
    report.per_node_calls.resize(pool.nodes.size(), 0);
    for (std::size_t id = 0; id < pool.nodes.size(); ++id) {
        if (!pool.nodes[id].done.load(std::memory_order_acquire)) {
            throw std::logic_error{"worker pool finished with incomplete nodes"};
        }
        report.per_node_calls[id] = pool.nodes[id].calls;
        report.total_calls += pool.nodes[id].calls;
    }
    report.digest = pool.nodes.back().digest;
    return report;
}

ExecutionReport hash_lockstep(const BitString& message, const TreeTopology& tree,
                              const PrefixStateTable& table) {
    check_hash_input(message, tree, table);
    const CostParams& cost = table.params().cost;
    const std::int64_t n = tree.node_count();
    const std::int64_t msg_bits = message.bit_size();

    // Item-aligned call plans, the same granularity the simulator uses.
    const std::vector<std::int64_t> zeros(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<StreamItem>> items(static_cast<std::size_t>(n));
    std::vector<std::vector<CallSpan>> plans(static_cast<std::size_t>(n));
    std::vector<std::vector<std::int64_t>> item_offsets(static_cast<std::size_t>(n));
    std::int64_t grand_total = 0;
    for (std::int64_t id = 0; id < n; ++id) {
        const auto uid = static_cast<std::size_t>(id);
        items[uid] = node_stream(tree.node(id), tree, cost, zeros, msg_bits);
        plans[uid] = call_plan(items[uid], cost);
        grand_total += static_cast<std::int64_t>(plans[uid].size());
        std::int64_t off = 0;
        for (const StreamItem& item : items[uid]) {
            item_offsets[uid].push_back(off);
            off += item.bit_len;
        }
        item_offsets[uid].push_back(off);
    }
    const std::int64_t round_cap = grand_total + n + 2;

    std::vector<Digest> digests(static_cast<std::size_t>(n));
    std::vector<std::atomic<std::int64_t>> finish(static_cast<std::size_t>(n));
    for (auto& f : finish) {
        f.store(-1, std::memory_order_relaxed);
    }
    std::atomic<bool> stop{false};
    std::atomic<bool> failed{false};
    std::int64_t rounds_total = 0;
    std::vector<std::int64_t> per_node_calls(static_cast<std::size_t>(n), 0);
    std::barrier<> round_barrier(static_cast<std::ptrdiff_t>(n));

    auto node_processor = [&](std::int64_t id) {
        const auto uid = static_cast<std::size_t>(id);
        VilHasher hasher(NodeTypeCode::for_node(tree.node(id)), table);
        std::size_t next_call = 0;
        std::int64_t round = 0;
        bool done = false;
        while (true) {
            round_barrier.arrive_and_wait(); // round start: prior publishes visible
            if (stop.load(std::memory_order_relaxed)) {
                break;
            }
            ++round;
            bool finished_now = false;
            if (!done && next_call < plans[uid].size()) {
                const CallSpan& span = plans[uid][next_call];
                bool available = true;
                for (std::size_t i = span.first_item; i <= span.last_item; ++i) {
                    if (items[uid][i].kind == ItemKind::ChainingValue) {
                        const std::int64_t child = tree.node(id).input[i].index;
                        if (finish[static_cast<std::size_t>(child)].load(std::memory_order_relaxed) < 0) {
                            available = false;
                            break;
                        }
                    }
                }
                if (available) {
                    // absorb exactly this call's slice of each contributing item
                    const std::int64_t call_lo = static_cast<std::int64_t>(next_call) * cost.block_bits();
                    const std::int64_t call_hi = call_lo + cost.block_bits();
                    for (std::size_t i = span.first_item; i <= span.last_item; ++i) {
                        const std::int64_t item_lo = item_offsets[uid][i];
                        const std::int64_t lo = std::max(call_lo, item_lo);
                        const std::int64_t hi = std::min(call_hi, item_offsets[uid][i + 1]);
                        if (hi <= lo) {
                            continue;
                        }
                        const InputRef& ref = tree.node(id).input[i];
                        if (ref.kind == InputRef::Kind::Block) {
                            const BlockSpan bs = block_span(ref.index, message, cost);
                            hasher.update(message, bs.begin + (lo - item_lo), hi - lo);
                        } else {
                            const Digest& cv = digests[static_cast<std::size_t>(ref.index)];
                            hasher.update(BitString::from_bytes(cv), lo - item_lo, hi - lo);
                        }
                    }
                    ++next_call;
                    if (next_call == plans[uid].size()) {
                        digests[uid] = hasher.finalize();
                        done = true;
                        finished_now = true;
                    }
                }
            }
            round_barrier.arrive_and_wait(); // round end: all calls performed
            if (finished_now) {
                finish[uid].store(round, std::memory_order_relaxed);
                if (id == tree.root_id()) {
                    rounds_total = round;
                    stop.store(true, std::memory_order_relaxed);
                }
            }
            if (round > round_cap && id == tree.root_id()) {
                failed.store(true, std::memory_order_relaxed);
                stop.store(true, std::memory_order_relaxed);
            }
        }
        // threads retire together at the same round-start barrier
        per_node_calls[uid] = static_cast<std::int64_t>(hasher.permute_calls());
    };

    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(n));
    for (std::int64_t id = 0; id < n; ++id) {
        threads.emplace_back(node_processor, id);
    }
    for (std::thread& t : threads) {
        t.join();
    }
    if (failed.load()) {
        throw std::logic_error{"lockstep execution failed to make progress"};
    }

    ExecutionReport report;
    report.mode = ExecMode::Lockstep;
    report.workers_used = static_cast<int>(n);
    report.lockstep_rounds = rounds_total;
    report.per_node_calls = std::move(per_node_calls);
    for (const std::int64_t c : report.per_node_calls) {
        report.total_calls += c;
    }
    report.digest = digests.back();
    return report;
}

} // namespace lath
