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
#include <stdexcept>

namespace lath {

// All ceiling logarithms and square roots in this project are evaluated in
// exact integer arithmetic. Floating point rounds the wrong way exactly at
// power-of-base boundaries, which is where the tree formulas live.

/// x / y rounded towards +infinity, for x >= 0, y >= 1.
constexpr std::int64_t ceil_div(std::int64_t x, std::int64_t y) {
    return (x + y - 1) / y;
}

/// Largest s >= 0 with s*s <= x (floor square root). x must be >= 0.
std::int64_t isqrt(std::int64_t x);

/// Smallest s >= 0 with s*s >= x.
std::int64_t ceil_sqrt(std::int64_t x);

/// ceil((-1 + sqrt(x)) / 2) for x >= 0, evaluated exactly: the smallest
/// integer k >= 0 with (2k+1)^2 >= x.
std::int64_t ceil_half_sqrt_minus1(std::int64_t x);

/// max(0, ceil(log_base(num/den))): the smallest k >= 0 with
/// den * base^k >= num. Requires base >= 2, num >= 1, den >= 1.
std::int64_t ceil_log_ratio(std::int64_t base, std::int64_t num, std::int64_t den);

/// base^exp with overflow check (throws std::overflow_error).
std::int64_t ipow(std::int64_t base, std::int64_t exp);

} // namespace lath
