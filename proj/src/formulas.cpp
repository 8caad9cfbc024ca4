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

#include "lath/formulas.hpp"

#include <algorithm>
#include <stdexcept>

#include "lath/intmath.hpp"

namespace lath {

namespace {

void require_tree_length(std::int64_t l) {
    if (l < 2) {
        throw std::invalid_argument{"message too short for a tree"};
    }
}

/// Distributes l blocks over processors: P1 takes i, P_t (t >= 2) takes
/// i + t - 2, capped by what remains; a trailing single block folds into P1.
Height2Plan make_height2_plan(std::int64_t l, std::int64_t i, std::int64_t k) {
    Height2Plan plan;
    plan.l = l;
    plan.k = k;
    plan.i = i;
    plan.time = k + 1;
    plan.chunk_sizes.push_back(std::min(i, l));
    std::int64_t remaining = l - plan.chunk_sizes.front();
    std::int64_t prescribed = i;
    while (remaining > 0) {
        const std::int64_t take = std::min(prescribed, remaining);
        plan.chunk_sizes.push_back(take);
        remaining -= take;
        ++prescribed;
    }
    if (plan.chunk_sizes.size() >= 2 && plan.chunk_sizes.back() == 1) {
        plan.chunk_sizes.pop_back();
        plan.chunk_sizes.front() += 1;
        plan.folded_last_block = true;
    }
    plan.processors = static_cast<std::int64_t>(plan.chunk_sizes.size());
    return plan;
}

} // namespace

Height2Plan height2_k(std::int64_t l) {
    require_tree_length(l);
    const std::int64_t k = ceil_half_sqrt_minus1(8 * l - 7);
    return make_height2_plan(l, 2, k);
}

Height2Plan height2_optimized(std::int64_t l) {
    require_tree_length(l);
    // k(j) = ceil((-1 + sqrt(4j^2 - 12j + 8l + 1)) / 2) decreases until
    // j = 3/2 and increases after, so the scan below terminates right after
    // the plateau of minimal values; the largest j on that plateau lets P1
    // soak up the most blocks and thus saves the most processors.
    const std::int64_t upper_root = isqrt(8 * l - 8) + 1;
    const std::int64_t j_bound = std::min<std::int64_t>(l, (isqrt(4 + 4 * upper_root) + 3) / 2 + 2);
    std::int64_t best_j = 1;
    std::int64_t best_k = -1;
    for (std::int64_t j = 1; j <= j_bound; ++j) {
        const std::int64_t kj = ceil_half_sqrt_minus1(4 * j * j - 12 * j + 8 * l + 1);
        if (best_k < 0 || kj < best_k) {
            best_k = kj;
            best_j = j;
        } else if (kj == best_k) {
            best_j = j;
        } else if (j >= 2) {
            break;
        }
    }
    const std::int64_t closed_form = ceil_half_sqrt_minus1(8 * l - 8);
    if (best_k != closed_form) {
        throw std::logic_error{"formula mismatch"};
    }
    return make_height2_plan(l, best_j, best_k);
}

UnrestrictedPlan predict_unrestricted(std::int64_t l, std::int64_t d, std::int64_t b) {
    require_tree_length(l);
    if (d < 1) {
        throw std::invalid_argument{"d must be >= 1"};
    }
    if (b != 2 && b != 3) {
        throw std::invalid_argument{"leaf arity must be 2 or 3"};
    }
    UnrestrictedPlan plan;
    plan.l = l;
    plan.d = d;
    plan.leaf_arity = b;
    if (l <= b) {
        // one node holding the whole message
        plan.time = l;
        plan.processors = 1;
    } else {
        plan.time = ceil_log_ratio(d + 1, l, b) + b;
        plan.processors = ceil_div(l, b);
    }
    return plan;
}

UnrestrictedPlan select_leaf_arity(std::int64_t l, std::int64_t d) {
    require_tree_length(l);
    if (d < 1) {
        throw std::invalid_argument{"d must be >= 1"};
    }
    // largest i >= 0 with 2(d+1)^i < l, if any
    std::int64_t pow_i = 1;
    bool has_interval = false;
    while (2 * (pow_i * (d + 1)) < l) {
        pow_i *= d + 1;
    }
    has_interval = 2 * pow_i < l; // i = 0 candidate when 2 < l
    const bool three_leaves = has_interval && l <= 3 * pow_i;

    UnrestrictedPlan plan;
    plan.l = l;
    plan.d = d;
    plan.leaf_arity = three_leaves ? 3 : 2;
    plan.time = predict_unrestricted(l, d, 2).time; // optimal either way
    plan.processors = ceil_div(l, plan.leaf_arity);
    return plan;
}

BoundedPlan predict_bounded(std::int64_t l, std::int64_t d, std::int64_t P) {
    if (l < 1 || d < 1 || P < 1) {
        throw std::invalid_argument{"l, d and P must be >= 1"};
    }
    BoundedPlan plan;
    plan.l = l;
    plan.d = d;
    plan.requested_p = P;
    plan.p = std::min(P, l);
    plan.clamped = plan.p != P;
    const std::int64_t r = l % plan.p;
    if (r == 0) {
        plan.a = plan.p;
        plan.b_count = 0;
    } else {
        plan.a = r;
        plan.b_count = plan.p - r;
    }
    plan.time = ceil_div(l, plan.p) + ceil_log_ratio(d + 1, plan.p, 1);
    return plan;
}

std::int64_t ternary_derivation_time(std::int64_t l) {
    require_tree_length(l);
    return 2 * ceil_log_ratio(3, l, 1) + 1;
}

} // namespace lath
