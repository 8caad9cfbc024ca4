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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lath/bitstring.hpp"
#include "lath/cost.hpp"
#include "lath/topology.hpp"

namespace lath {

/// Sponge geometry. The rate equals the block size d * digest_bits, so an
/// s-block input costs exactly s permutation calls once the prefix block is
/// covered by a precomputed state. The permutation is a toy ARX construction;
/// it is NOT cryptographically secure and exists to validate the mode, its
/// scheduling and its rate, not primitive strength.
struct SpongeParams {
    CostParams cost;
    std::int64_t capacity_bits = 256;
    int rounds = 8;

    std::int64_t rate_bits() const { return cost.block_bits(); }
    std::int64_t state_bits() const { return rate_bits() + capacity_bits; }
    std::size_t state_words() const { return static_cast<std::size_t>(state_bits() / 64); }

    /// capacity >= 2 * digest_bits and 64-bit-aligned state required.
    void validate() const;
};

/// Two domain-separation bits carried by every node input: whether the node
/// produces the final output, and whether its input contains message blocks.
struct NodeTypeCode {
    bool is_final_output = false;
    bool contains_message_blocks = false;

    int value() const { return (is_final_output ? 2 : 0) | (contains_message_blocks ? 1 : 0); }
    static NodeTypeCode from_value(int v) { return {(v & 2) != 0, (v & 1) != 0}; }
    static NodeTypeCode for_node(const TreeNode& node) {
        return {node.node_type == NodeType::Root, node.has_message_blocks()};
    }
};

/// Sponge state as 64-bit words. Byte k of the state is byte k % 8
/// (little-endian) of word k / 8; the rate occupies the first rate_bits/8
/// bytes and absorption XORs a block into them.
struct SpongeState {
    std::vector<std::uint64_t> words;

    bool operator==(const SpongeState&) const = default;
};

SpongeState zero_state(const SpongeParams& params);

/// The fixed public permutation. For each round r = 0..rounds-1 and each
/// step s = 0..n-1 over the n state words w:
///
///   i = s, j = (s + 1) mod n
///   w[i] = rotl64(w[i] + w[j] + rc(r, s), 23)
///   w[j] ^= rotl64(w[i], 41)
///
/// with rc(r, s) = splitmix64(256 * r + s + 1). Both statements are
/// invertible, so the permutation is a bijection on states.
void permute(SpongeState& state, const SpongeParams& params);

/// Exact inverse of permute; used to validate bijectivity.
void permute_inverse(SpongeState& state, const SpongeParams& params);

/// The sixteen hash states reached from the all-zero state by absorbing the
/// first rate block, which consists of a (rate-2)-bit type encoding (all
/// zero except its final two bits) followed by the first two input bits.
/// Indexed by (type code, leading two input bits). With the table in hand the
/// prefix block costs no calls at hashing time.
class PrefixStateTable {
  public:
    explicit PrefixStateTable(const SpongeParams& params);

    const SpongeState& entry(int type_code, int leading_bits) const;
    const SpongeParams& params() const { return params_; }

    /// The first rate block for the given indices, as absorbed from zero.
    BitString prefix_block(int type_code, int leading_bits) const;

  private:
    SpongeParams params_;
    std::array<SpongeState, 16> entries_;
};

using Digest = std::vector<std::uint8_t>;

std::string to_hex(const Digest& digest);

/// Incremental variable-input-length sponge hash of one node input.
///
/// Conceptually the message is encoding || input || 10*1 padding, absorbed in
/// rate-sized blocks from the all-zero state; the first block is skipped via
/// the precomputed table once the leading two input bits are known. Because
/// the (rate-2)-bit encoding shifts everything by two bits, block absorption
/// trails item availability by two bits; call accounting follows the
/// item-aligned schedule, with the padding's two-plus bits completing the
/// final block at finalization. For an input of s whole blocks exactly s
/// permutation calls are performed.
class VilHasher {
  public:
    VilHasher(NodeTypeCode type, const PrefixStateTable& table);

    void update(const BitString& bits);
    void update(const BitString& bits, std::int64_t bit_off, std::int64_t nbits);

    /// Applies the 10*1 padding, absorbs the remainder and returns the first
    /// digest_bits of the final state. Callable once; the input must have
    /// held at least one bit ("empty node input").
    Digest finalize();

    std::uint64_t permute_calls() const { return calls_; }
    std::int64_t input_bits() const { return input_bits_; }

  private:
    void absorb_buffer();

    const PrefixStateTable& table_;
    NodeTypeCode type_;
    SpongeState state_;
    std::vector<std::uint8_t> buf_;
    std::int64_t buf_bits_ = 0;
    int lead_bits_ = 0;
    int lead_count_ = 0;
    std::int64_t input_bits_ = 0;
    std::uint64_t calls_ = 0;
    bool finalized_ = false;
};

struct VilResult {
    Digest digest;
    std::int64_t calls = 0;
};

/// One-shot convenience wrapper around VilHasher.
VilResult vil_hash(const BitString& input, NodeTypeCode type, const PrefixStateTable& table);

/// Hashes one tree node: concatenates its input items in order (blocks
/// sliced from the message, chaining values taken from child_digests by node
/// id) under the node's type code. Throws on a missing child digest.
Digest hash_node(const TreeNode& node, const std::vector<Digest>& child_digests,
                 const BitString& message, const PrefixStateTable& table);

/// hash_node plus the permutation-call count, which always equals the
/// cost model's call_count for the node's stream.
VilResult hash_node_counted(const TreeNode& node, const std::vector<Digest>& child_digests,
                            const BitString& message, const PrefixStateTable& table);

} // namespace lath
