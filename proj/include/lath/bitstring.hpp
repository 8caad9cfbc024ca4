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
#include <span>
#include <vector>

namespace lath {

/// Copies n bits between byte buffers at arbitrary bit offsets. Bits are
/// addressed MSB-first within a byte: bit i lives in byte i/8 under mask
/// 0x80 >> (i % 8). Destination bytes beyond the written range are untouched.
void copy_bits(std::uint8_t* dst, std::int64_t dst_off, const std::uint8_t* src,
               std::int64_t src_off, std::int64_t nbits);

/// Growable bit string, MSB-first within each byte; trailing padding bits of
/// the last byte are kept zero.
class BitString {
  public:
    BitString() = default;

    static BitString from_bytes(std::span<const std::uint8_t> bytes);

    std::int64_t bit_size() const { return nbits_; }
    bool bit(std::int64_t i) const;
    const std::vector<std::uint8_t>& bytes() const { return data_; }

    void append_bit(bool value);
    void append_zeros(std::int64_t n);
    void append(const BitString& other);
    void append_slice(const BitString& src, std::int64_t bit_off, std::int64_t nbits);

    /// Copies bits [bit_off, bit_off + nbits) into dst, MSB-first from
    /// dst bit 0; trailing bits of the last written byte are zeroed.
    void extract(std::int64_t bit_off, std::int64_t nbits, std::uint8_t* dst) const;

    bool operator==(const BitString&) const = default;

  private:
    std::vector<std::uint8_t> data_;
    std::int64_t nbits_ = 0;
};

} // namespace lath
