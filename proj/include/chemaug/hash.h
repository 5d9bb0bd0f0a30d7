//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_HASH_H_
#define CHEMAUG_HASH_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace chemaug {

/// Incremental 64-bit FNV-1a. Integers are fed as little-endian bytes so
/// digests are identical on every platform; all fingerprint bit assignments
/// and derived seeds depend on this exact byte stream.
class Fnv1a {
public:
  static constexpr std::uint64_t kOffsetBasis = 0xcbf29ce484222325ULL;
  static constexpr std::uint64_t kPrime = 0x100000001b3ULL;

  Fnv1a &update(std::span<const std::uint8_t> bytes) noexcept {
    for (std::uint8_t b: bytes) {
      state_ ^= b;
      state_ *= kPrime;
    }
    return *this;
  }

  Fnv1a &update(std::string_view text) noexcept {
    for (char c: text) {
      state_ ^= static_cast<std::uint8_t>(c);
      state_ *= kPrime;
    }
    return *this;
  }

  Fnv1a &update_i32(std::int32_t value) noexcept {
    return update_le(static_cast<std::uint32_t>(value), 4);
  }

  Fnv1a &update_u64(std::uint64_t value) noexcept {
    return update_le(value, 8);
  }

  std::uint64_t digest() const noexcept { return state_; }

private:
  Fnv1a &update_le(std::uint64_t value, int nbytes) noexcept {
    for (int i = 0; i < nbytes; ++i) {
      state_ ^= (value >> (8 * i)) & 0xffU;
      state_ *= kPrime;
    }
    return *this;
  }

  std::uint64_t state_ = kOffsetBasis;
};

inline std::uint64_t fnv1a64(std::string_view text) noexcept {
  return Fnv1a().update(text).digest();
}

// 16 lowercase hex digits.
std::string hex_u64(std::uint64_t value);

}  // namespace chemaug

#endif  // CHEMAUG_HASH_H_
