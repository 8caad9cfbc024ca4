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

#include "lath/intmath.hpp"

#include <cmath>
#include <limits>

namespace lath {

std::int64_t isqrt(std::int64_t x) {
    if (x < 0) {
        throw std::invalid_argument{"isqrt of negative value"};
    }
    // Seed from the FPU, then correct; long double has enough mantissa for
    // every value this project produces, the loops are belt and braces.
    auto s = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(x)));
    while (s > 0 && s * s > x) {
        --s;
    }
    while ((s + 1) * (s + 1) <= x) {
        ++s;
    }
    return s;
}

std::int64_t ceil_sqrt(std::int64_t x) {
    if (x <= 0) {
        return 0;
    }
    const std::int64_t s = isqrt(x);
    return s * s == x ? s : s + 1;
}

std::int64_t ceil_half_sqrt_minus1(std::int64_t x) {
    // smallest k >= 0 with 2k+1 >= ceil(sqrt(x))
    return ceil_sqrt(x) / 2;
}

std::int64_t ceil_log_ratio(std::int64_t base, std::int64_t num, std::int64_t den) {
    if (base < 2 || num < 1 || den < 1) {
        throw std::invalid_argument{"ceil_log_ratio: base >= 2, num >= 1, den >= 1 required"};
    }
    std::int64_t k = 0;
    std::int64_t pow = den;
    while (pow < num) {
        pow *= base; // num, den <= 2^53 in practice; no overflow before pow >= num
        ++k;
    }
    return k;
}

std::int64_t ipow(std::int64_t base, std::int64_t exp) {
    if (base < 0 || exp < 0) {
        throw std::invalid_argument{"ipow: non-negative arguments required"};
    }
    std::int64_t r = 1;
    for (std::int64_t e = 0; e < exp; ++e) {
        if (base != 0 && r > std::numeric_limits<std::int64_t>::max() / base) {
            throw std::overflow_error{"ipow overflow"};
        }
        r *= base;
    }
    return r;
}

} // namespace lath
