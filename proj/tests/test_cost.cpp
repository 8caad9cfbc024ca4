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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "lath/cost.hpp"
#include "lath/intmath.hpp"

using namespace lath;

namespace {

StreamItem blk(const CostParams& p) { return StreamItem::block(p.block_bits()); }
StreamItem cv(const CostParams& p, std::int64_t ready) {
    return StreamItem::chaining_value(p.digest_bits, ready);
}

/// Reference evaluator built a different way: attributes every single bit of
/// the concatenation to its item by linear scan, then walks calls.
std::int64_t finish_time_bit_reference(const std::vector<StreamItem>& items,
                                       const CostParams& params) {
    std::vector<std::int64_t> bit_ready;
    for (const StreamItem& item : items) {
        for (std::int64_t b = 0; b < item.bit_len; ++b) {
            bit_ready.push_back(item.ready_time);
        }
    }
    std::int64_t finish = 0;
    for (std::size_t lo = 0; lo < bit_ready.size(); lo += static_cast<std::size_t>(params.block_bits())) {
        const std::size_t hi =
            std::min(bit_ready.size(), lo + static_cast<std::size_t>(params.block_bits()));
        std::int64_t ready = 0;
        for (std::size_t b = lo; b < hi; ++b) {
            ready = std::max(ready, bit_ready[b]);
        }
        finish = std::max(finish, ready) + 1;
    }
    return finish;
}

std::vector<StreamItem> random_stream(std::mt19937_64& rng, const CostParams& params) {
    std::vector<StreamItem> items;
    const int n = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) {
        if (rng() % 2 == 0) {
            // blocks may be partial anywhere in the concatenation model
            items.push_back(StreamItem::block(1 + static_cast<std::int64_t>(
                                                      rng() % static_cast<std::uint64_t>(params.block_bits()))));
        } else {
            items.push_back(cv(params, static_cast<std::int64_t>(rng() % 7)));
        }
    }
    return items;
}

} // namespace

TEST_SUITE("cost_stream") {

TEST_CASE("two blocks take two units") {
    const CostParams p{1, 8};
    CHECK(absorb_finish_time({blk(p), blk(p)}, p) == 2);
}

TEST_CASE("blocks then chaining values arriving at 2 and 3 finish at 4") {
    const CostParams p{1, 8};
    CHECK(absorb_finish_time({blk(p), blk(p), cv(p, 2), cv(p, 3)}, p) == 4);
}

TEST_CASE("d=3 packs three chaining values per call") {
    const CostParams p{3, 8};
    const std::vector<StreamItem> items{blk(p),    blk(p),   cv(p, 2), cv(p, 2),
                                        cv(p, 2),  cv(p, 3), cv(p, 3), cv(p, 3)};
    CHECK(absorb_finish_time(items, p) == 4);
}

TEST_CASE("call_count") {
    const CostParams d1{1, 8};
    const CostParams d2{2, 8};
    CHECK(call_count({blk(d1), blk(d1), blk(d1), blk(d1), blk(d1)}, d1) == 5);
    CHECK(call_count({blk(d2), cv(d2, 1)}, d2) == 2);
    CHECK(call_count({blk(d1)}, d1) == 1);
}

TEST_CASE("errors") {
    const CostParams p{1, 8};
    CHECK_THROWS_WITH_AS(absorb_finish_time({}, p), "empty node input", std::invalid_argument);
    CHECK_THROWS_WITH_AS(call_count({}, p), "empty node input", std::invalid_argument);
    CHECK_THROWS_WITH_AS(absorb_finish_time({StreamItem::block(0)}, p), "malformed stream",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(absorb_finish_time({StreamItem::block(9)}, p), "malformed stream",
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(absorb_finish_time({StreamItem::chaining_value(16, 1)}, p),
                         "malformed stream", std::invalid_argument);
    CHECK_THROWS_WITH_AS(absorb_finish_time({StreamItem::chaining_value(8, -1)}, p),
                         "malformed stream", std::invalid_argument);
    CHECK_THROWS_WITH_AS(absorb_finish_time({StreamItem{ItemKind::MessageBlock, 8, 1}}, p),
                         "malformed stream", std::invalid_argument);
}

TEST_CASE("matches the per-bit reference on random streams") {
    std::mt19937_64 rng(42);
    for (int c = 0; c < 400; ++c) {
        const CostParams p{1 + static_cast<std::int64_t>(rng() % 4), 8};
        const auto items = random_stream(rng, p);
        CHECK(absorb_finish_time(items, p) == finish_time_bit_reference(items, p));
    }
}

TEST_CASE("monotone in ready times") {
    std::mt19937_64 rng(43);
    for (int c = 0; c < 300; ++c) {
        const CostParams p{1 + static_cast<std::int64_t>(rng() % 4), 8};
        auto items = random_stream(rng, p);
        const std::int64_t before = absorb_finish_time(items, p);
        for (auto& item : items) {
            if (item.kind == ItemKind::ChainingValue && rng() % 2 == 0) {
                item.ready_time += static_cast<std::int64_t>(rng() % 3);
            }
        }
        CHECK(absorb_finish_time(items, p) >= before);
    }
}

TEST_CASE("lower bounds and pure-block streams") {
    std::mt19937_64 rng(44);
    for (int c = 0; c < 300; ++c) {
        const CostParams p{1 + static_cast<std::int64_t>(rng() % 4), 8};
        const auto items = random_stream(rng, p);
        const std::int64_t t = absorb_finish_time(items, p);
        CHECK(t >= call_count(items, p));
        std::int64_t max_ready = 0;
        for (const auto& item : items) {
            max_ready = std::max(max_ready, item.ready_time);
        }
        CHECK(t >= 1 + max_ready);
    }
    const CostParams p{2, 8};
    for (int n = 1; n <= 9; ++n) {
        const std::vector<StreamItem> blocks(static_cast<std::size_t>(n), blk(p));
        CHECK(absorb_finish_time(blocks, p) == n);
        CHECK(call_count(blocks, p) == n);
    }
}

TEST_CASE("permuting an equal-ready-time suffix changes nothing") {
    std::mt19937_64 rng(45);
    for (int c = 0; c < 200; ++c) {
        const CostParams p{1 + static_cast<std::int64_t>(rng() % 3), 8};
        auto items = random_stream(rng, p);
        const std::int64_t ready = static_cast<std::int64_t>(rng() % 5);
        const int suffix = 2 + static_cast<int>(rng() % 4);
        for (int i = 0; i < suffix; ++i) {
            items.push_back(cv(p, ready));
        }
        const std::int64_t before = absorb_finish_time(items, p);
        std::shuffle(items.end() - suffix, items.end(), rng);
        CHECK(absorb_finish_time(items, p) == before);
    }
}

TEST_CASE("call plans attribute items to calls") {
    const CostParams p{2, 8}; // block 16 bits, digest 8
    // 16-bit block, then 3 chaining values of 8 bits: calls cover
    // [block], [cv, cv], [cv]
    const std::vector<StreamItem> items{blk(p), cv(p, 1), cv(p, 1), cv(p, 2)};
    const auto plan = call_plan(items, p);
    REQUIRE(plan.size() == 3);
    CHECK(plan[0].first_item == 0);
    CHECK(plan[0].last_item == 0);
    CHECK(plan[1].first_item == 1);
    CHECK(plan[1].last_item == 2);
    CHECK(plan[2].first_item == 3);
    CHECK(plan[2].last_item == 3);
}

} // TEST_SUITE
