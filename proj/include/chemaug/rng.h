//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_RNG_H_
#define CHEMAUG_RNG_H_

#include <cstddef>
#include <cstdint>
#include <string_view>

#include <Eigen/Dense>

namespace chemaug {

/// SplitMix64 stream. The algorithm is fixed so that a seed reproduces the
/// same augmentations in every implementation of the toolkit.
class RngState {
public:
  explicit RngState(std::uint64_t seed) noexcept: state_(seed) { }

  std::uint64_t next_u64() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n) via the high half of a 64x64 product.
  std::size_t below(std::size_t n) noexcept {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::size_t>(wide >> 64);
  }

  // Uniform direction on the unit sphere (consumes two draws).
  Eigen::Vector3d unit_vector() noexcept;

  std::uint64_t state() const noexcept { return state_; }

private:
  std::uint64_t state_;
};

/// Seed for one (record, stream) pair: seed XOR FNV-1a(record_id '\0' stream).
/// Augmentations use this so results do not depend on processing order.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view record_id,
                          std::string_view stream) noexcept;

}  // namespace chemaug

#endif  // CHEMAUG_RNG_H_
