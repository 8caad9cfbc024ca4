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

#include "lath/bitstring.hpp"

#include <cstring>
#include <stdexcept>

namespace lath {

namespace {

bool get_bit(const std::uint8_t* p, std::int64_t i) {
    return (p[i >> 3] >> (7 - (i & 7))) & 1;
}

void put_bit(std::uint8_t* p, std::int64_t i, bool v) {
    const std::uint8_t mask = static_cast<std::uint8_t>(0x80U >> (i & 7));
    if (v) {
        p[i >> 3] |= mask;
    } else {
        p[i >> 3] &= static_cast<std::uint8_t>(~mask);
    }
}

} // namespace

void copy_bits(std::uint8_t* dst, std::int64_t dst_off, const std::uint8_t* src,
               std::int64_t src_off, std::int64_t nbits) {
    if ((dst_off & 7) == 0 && (src_off & 7) == 0) {
        const std::int64_t whole = nbits >> 3;
        std::memcpy(dst + (dst_off >> 3), src + (src_off >> 3), static_cast<std::size_t>(whole));
        dst_off += whole << 3;
        src_off += whole << 3;
        nbits &= 7;
    }
    for (std::int64_t i = 0; i < nbits; ++i) {
        put_bit(dst, dst_off + i, get_bit(src, src_off + i));
    }
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes) {
    BitString s;
    s.data_.assign(bytes.begin(), bytes.end());
    s.nbits_ = static_cast<std::int64_t>(bytes.size()) * 8;
    return s;
}

bool BitString::bit(std::int64_t i) const {
    if (i < 0 || i >= nbits_) {
        throw std::out_of_range{"BitString::bit"};
    }
    return get_bit(data_.data(), i);
}

void BitString::append_bit(bool value) {
    if (nbits_ % 8 == 0) {
        data_.push_back(0);
    }
    put_bit(data_.data(), nbits_, value);
    ++nbits_;
}

void BitString::append_zeros(std::int64_t n) {
    data_.resize(static_cast<std::size_t>((nbits_ + n + 7) / 8), 0);
    nbits_ += n; // freshly resized bytes are zero and existing tail bits are kept zero
}

void BitString::append(const BitString& other) {
    append_slice(other, 0, other.nbits_);
}

void BitString::append_slice(const BitString& src, std::int64_t bit_off, std::int64_t nbits) {
    if (bit_off < 0 || nbits < 0 || bit_off + nbits > src.nbits_) {
        throw std::out_of_range{"BitString::append_slice"};
    }
    if (&src == this) {
        const BitString copy = src;
        append_slice(copy, bit_off, nbits);
        return;
    }
    const std::int64_t start = nbits_;
    data_.resize(static_cast<std::size_t>((nbits_ + nbits + 7) / 8), 0);
    nbits_ += nbits;
    copy_bits(data_.data(), start, src.data_.data(), bit_off, nbits);
}

void BitString::extract(std::int64_t bit_off, std::int64_t nbits, std::uint8_t* dst) const {
    if (bit_off < 0 || nbits < 0 || bit_off + nbits > nbits_) {
        throw std::out_of_range{"BitString::extract"};
    }
    std::memset(dst, 0, static_cast<std::size_t>((nbits + 7) / 8));
    copy_bits(dst, 0, data_.data(), bit_off, nbits);
}

} // namespace lath
