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

#include "lath/sponge.hpp"

#include <bit>
#include <stdexcept>

namespace lath {

void SpongeParams::validate() const {
    cost.validate();
    if (capacity_bits < 2 * cost.digest_bits) {
        throw std::invalid_argument{"SpongeParams: capacity must be at least twice the digest size"};
    }
    if (state_bits() % 64 != 0) {
        throw std::invalid_argument{"SpongeParams: state size must be a multiple of 64 bits"};
    }
    if (rounds < 1) {
        throw std::invalid_argument{"SpongeParams: at least one round required"};
    }
}

SpongeState zero_state(const SpongeParams& params) {
    params.validate();
    return SpongeState{std::vector<std::uint64_t>(params.state_words(), 0)};
}

namespace {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t round_constant(int round, std::size_t step) {
    return splitmix64(256ULL * static_cast<std::uint64_t>(round) + step + 1);
}

void xor_byte(SpongeState& state, std::int64_t byte_index, std::uint8_t value) {
    state.words[static_cast<std::size_t>(byte_index >> 3)] ^=
        static_cast<std::uint64_t>(value) << ((byte_index & 7) * 8);
}

std::uint8_t state_byte(const SpongeState& state, std::int64_t byte_index) {
    return static_cast<std::uint8_t>(
        state.words[static_cast<std::size_t>(byte_index >> 3)] >> ((byte_index & 7) * 8));
}

void absorb_block(SpongeState& state, const std::uint8_t* block, const SpongeParams& params) {
    for (std::int64_t k = 0; k < params.rate_bits() / 8; ++k) {
        xor_byte(state, k, block[k]);
    }
    permute(state, params);
}

} // namespace

void permute(SpongeState& state, const SpongeParams& params) {
    auto& w = state.words;
    const std::size_t n = w.size();
    for (int r = 0; r < params.rounds; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
            const std::size_t i = s;
            const std::size_t j = (s + 1) % n;
            w[i] = std::rotl(w[i] + w[j] + round_constant(r, s), 23);
            w[j] ^= std::rotl(w[i], 41);
        }
    }
}

void permute_inverse(SpongeState& state, const SpongeParams& params) {
    auto& w = state.words;
    const std::size_t n = w.size();
    for (int r = params.rounds - 1; r >= 0; --r) {
        for (std::size_t s = n; s-- > 0;) {
            const std::size_t i = s;
            const std::size_t j = (s + 1) % n;
            w[j] ^= std::rotl(w[i], 41);
            w[i] = std::rotr(w[i], 23) - w[j] - round_constant(r, s);
        }
    }
}

PrefixStateTable::PrefixStateTable(const SpongeParams& params) : params_(params) {
    params_.validate();
    for (int type_code = 0; type_code < 4; ++type_code) {
        for (int lead = 0; lead < 4; ++lead) {
            const BitString block = prefix_block(type_code, lead);
            SpongeState state = zero_state(params_);
            absorb_block(state, block.bytes().data(), params_);
            entries_[static_cast<std::size_t>(type_code * 4 + lead)] = std::move(state);
        }
    }
}

const SpongeState& PrefixStateTable::entry(int type_code, int leading_bits) const {
    if (type_code < 0 || type_code > 3 || leading_bits < 0 || leading_bits > 3) {
        throw std::out_of_range{"PrefixStateTable::entry"};
    }
    return entries_[static_cast<std::size_t>(type_code * 4 + leading_bits)];
}

BitString PrefixStateTable::prefix_block(int type_code, int leading_bits) const {
    // rate-2 encoding bits, all zero but the last two, then the first two
    // input bits complete the block
    BitString block;
    block.append_zeros(params_.rate_bits() - 4);
    block.append_bit((type_code & 2) != 0);
    block.append_bit((type_code & 1) != 0);
    block.append_bit((leading_bits & 2) != 0);
    block.append_bit((leading_bits & 1) != 0);
    return block;
}

std::string to_hex(const Digest& digest) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(digest.size() * 2);
    for (const std::uint8_t b : digest) {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0xF]);
    }
    return out;
}

VilHasher::VilHasher(NodeTypeCode type, const PrefixStateTable& table)
    : table_(table), type_(type) {
    buf_.resize(static_cast<std::size_t>(table_.params().rate_bits() / 8), 0);
}

void VilHasher::absorb_buffer() {
    absorb_block(state_, buf_.data(), table_.params());
    ++calls_;
    std::fill(buf_.begin(), buf_.end(), 0);
    buf_bits_ = 0;
}

void VilHasher::update(const BitString& bits) {
    update(bits, 0, bits.bit_size());
}

void VilHasher::update(const BitString& bits, std::int64_t bit_off, std::int64_t nbits) {
    if (finalized_) {
        throw std::logic_error{"VilHasher: update after finalize"};
    }
    const std::int64_t rate = table_.params().rate_bits();
    std::int64_t off = bit_off;
    std::int64_t left = nbits;
    input_bits_ += nbits;
    while (lead_count_ < 2 && left > 0) {
        lead_bits_ = (lead_bits_ << 1) | (bits.bit(off) ? 1 : 0);
        ++lead_count_;
        ++off;
        --left;
        if (lead_count_ == 2) {
            state_ = table_.entry(type_.value(), lead_bits_);
        }
    }
    while (left > 0) {
        const std::int64_t take = std::min(left, rate - buf_bits_);
        copy_bits(buf_.data(), buf_bits_, bits.bytes().data(), off, take);
        buf_bits_ += take;
        off += take;
        left -= take;
        if (buf_bits_ == rate) {
            absorb_buffer();
        }
    }
}

Digest VilHasher::finalize() {
    if (finalized_) {
        throw std::logic_error{"VilHasher: finalize called twice"};
    }
    if (input_bits_ == 0) {
        throw std::invalid_argument{"empty node input"};
    }
    if (lead_count_ < 2) {
        throw std::invalid_argument{"node input shorter than two bits"};
    }
    finalized_ = true;
    const SpongeParams& params = table_.params();
    const std::int64_t rate = params.rate_bits();
    // 10*1 padding: at least two bits, up to a full extra block when the
    // remainder leaves no room for them
    std::int64_t pad = rate - buf_bits_;
    if (pad < 2) {
        pad += rate;
    }
    BitString padding;
    padding.append_bit(true);
    padding.append_zeros(pad - 2);
    padding.append_bit(true);
    std::int64_t off = 0;
    while (off < pad) {
        const std::int64_t take = std::min(pad - off, rate - buf_bits_);
        copy_bits(buf_.data(), buf_bits_, padding.bytes().data(), off, take);
        buf_bits_ += take;
        off += take;
        if (buf_bits_ == rate) {
            absorb_buffer();
        }
    }
    Digest digest(static_cast<std::size_t>(params.cost.digest_bytes()));
    for (std::size_t k = 0; k < digest.size(); ++k) {
        digest[k] = state_byte(state_, static_cast<std::int64_t>(k));
    }
    return digest;
}

VilResult vil_hash(const BitString& input, NodeTypeCode type, const PrefixStateTable& table) {
    VilHasher hasher(type, table);
    hasher.update(input);
    VilResult result;
    result.digest = hasher.finalize();
    result.calls = static_cast<std::int64_t>(hasher.permute_calls());
    return result;
}

VilResult hash_node_counted(const TreeNode& node, const std::vector<Digest>& child_digests,
                            const BitString& message, const PrefixStateTable& table) {
    const SpongeParams& params = table.params();
    VilHasher hasher(NodeTypeCode::for_node(node), table);
    for (const InputRef& ref : node.input) {
        if (ref.kind == InputRef::Kind::Block) {
            const std::int64_t begin = (ref.index - 1) * params.rate_bits();
            const std::int64_t len = std::min(params.rate_bits(), message.bit_size() - begin);
            if (len <= 0) {
                throw std::invalid_argument{"message size mismatch"};
            }
            hasher.update(message, begin, len);
        } else {
            const auto& cv = child_digests.at(static_cast<std::size_t>(ref.index));
            if (cv.empty()) {
                throw std::invalid_argument{"missing child digest"};
            }
            hasher.update(BitString::from_bytes(cv));
        }
    }
    VilResult result;
    result.digest = hasher.finalize();
    result.calls = static_cast<std::int64_t>(hasher.permute_calls());
    return result;
}

Digest hash_node(const TreeNode& node, const std::vector<Digest>& child_digests,
                 const BitString& message, const PrefixStateTable& table) {
    return hash_node_counted(node, child_digests, message, table).digest;
}

} // namespace lath
