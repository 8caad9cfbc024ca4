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

#include "lath/cost.hpp"

#include <algorithm>
#include <stdexcept>

#include "lath/intmath.hpp"

namespace lath {

void CostParams::validate() const {
    if (d < 1) {
        throw std::invalid_argument{"CostParams: d must be >= 1"};
    }
    if (digest_bits < 8 || digest_bits % 8 != 0) {
        throw std::invalid_argument{"CostParams: digest_bits must be a positive multiple of 8"};
    }
}

namespace {

void validate_stream(const std::vector<StreamItem>& items, const CostParams& params) {
    params.validate();
    if (items.empty()) {
        throw std::invalid_argument{"empty node input"};
    }
    for (const StreamItem& it : items) {
        const bool ok = it.kind == ItemKind::MessageBlock
            ? (it.bit_len >= 1 && it.bit_len <= params.block_bits() && it.ready_time == 0)
            : (it.bit_len == params.digest_bits && it.ready_time >= 0);
        if (!ok) {
            throw std::invalid_argument{"malformed stream"};
        }
    }
}

} // namespace

std::vector<CallSpan> call_plan(const std::vector<StreamItem>& items, const CostParams& params) {
    validate_stream(items, params);
    const std::int64_t block = params.block_bits();
    std::int64_t total = 0;
    for (const StreamItem& it : items) {
        total += it.bit_len;
    }
    std::vector<CallSpan> plan(static_cast<std::size_t>(ceil_div(total, block)));
    std::int64_t offset = 0;
    bool first_seen = false;
    std::size_t prev_last = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const std::int64_t lo = offset / block;
        const std::int64_t hi = (offset + items[i].bit_len - 1) / block;
        for (std::int64_t c = lo; c <= hi; ++c) {
            auto& span = plan[static_cast<std::size_t>(c)];
            if (c > static_cast<std::int64_t>(prev_last) || !first_seen) {
                span.first_item = i;
                first_seen = true;
                prev_last = static_cast<std::size_t>(c);
            }
            span.last_item = i;
        }
        offset += items[i].bit_len;
    }
    return plan;
}

std::int64_t absorb_finish_time(const std::vector<StreamItem>& items, const CostParams& params) {
    const std::vector<CallSpan> plan = call_plan(items, params);
    std::int64_t finish = 0;
    for (const CallSpan& span : plan) {
        std::int64_t ready = 0;
        for (std::size_t i = span.first_item; i <= span.last_item; ++i) {
            ready = std::max(ready, items[i].ready_time);
        }
        finish = std::max(finish, ready) + 1;
    }
    return finish;
}

std::int64_t call_count(const std::vector<StreamItem>& items, const CostParams& params) {
    validate_stream(items, params);
    std::int64_t total = 0;
    for (const StreamItem& it : items) {
        total += it.bit_len;
    }
    return ceil_div(total, params.block_bits());
}

} // namespace lath
