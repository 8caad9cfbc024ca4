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
#include <vector>

namespace lath {

/// Block/digest geometry of the inner hash. One underlying call consumes one
/// block of d*digest_bits bits, so it can pack either one message block or d
/// chaining values; d+1 is therefore the natural reduction arity.
struct CostParams {
    std::int64_t d = 1;           ///< block size over digest size
    std::int64_t digest_bits = 128;

    std::int64_t block_bits() const { return d * digest_bits; }
    std::int64_t digest_bytes() const { return digest_bits / 8; }
    std::int64_t block_bytes() const { return block_bits() / 8; }

    /// Throws std::invalid_argument unless d >= 1 and digest_bits is a
    /// positive multiple of 8.
    void validate() const;
};

enum class ItemKind { MessageBlock, ChainingValue };

/// One element of a node's ordered input stream. Message blocks are ready at
/// time 0 (the whole message is available up front); a chaining value becomes
/// consumable only after its producing node has finished.
struct StreamItem {
    ItemKind kind = ItemKind::MessageBlock;
    std::int64_t bit_len = 0;
    std::int64_t ready_time = 0; ///< units; always 0 for message blocks

    static StreamItem block(std::int64_t bit_len) { return {ItemKind::MessageBlock, bit_len, 0}; }
    static StreamItem chaining_value(std::int64_t bit_len, std::int64_t ready_time) {
        return {ItemKind::ChainingValue, bit_len, ready_time};
    }
};

/// Items [first_item, last_item] contribute at least one bit to a given call.
struct CallSpan {
    std::size_t first_item = 0;
    std::size_t last_item = 0;
};

/// Partitions the concatenated item bit-spans into consecutive block_bits
/// sized calls (the final call may cover a partial block) and reports which
/// items feed each call.
std::vector<CallSpan> call_plan(const std::vector<StreamItem>& items, const CostParams& params);

/// Finish time of a node absorbing `items` in order.
///
/// The item bit-spans are concatenated; call j consumes the next block_bits
/// bits (the final call may consume a partial block, completed by reversible
/// padding at no extra cost). Call j starts at max(end of call j-1, latest
/// ready_time among items contributing any bit to call j) and lasts exactly
/// one unit. The result is the end of the last call. Type-encoding prefixes
/// cost nothing here: their block is covered by a precomputed hash state.
///
/// Throws std::invalid_argument with "empty node input" / "malformed stream".
std::int64_t absorb_finish_time(const std::vector<StreamItem>& items, const CostParams& params);

/// Total underlying calls for the node: ceil(total bits / block_bits).
std::int64_t call_count(const std::vector<StreamItem>& items, const CostParams& params);

} // namespace lath
