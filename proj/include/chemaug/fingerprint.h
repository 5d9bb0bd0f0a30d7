//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_FINGERPRINT_H_
#define CHEMAUG_FINGERPRINT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chemaug/molecule.h"
#include "chemaug/record.h"
#include "chemaug/rng.h"

namespace chemaug {

enum class FingerprintKind { kEcfp, kRdkfp };

std::string_view to_string(FingerprintKind kind);
// Throws kInvalidArgument.
FingerprintKind parse_fingerprint_kind(std::string_view name);

class BitFingerprint {
public:
  BitFingerprint() = default;
  // Throws kInvalidArgument unless nbits is a power of two >= 8.
  BitFingerprint(FingerprintKind kind, int nbits);

  FingerprintKind kind() const noexcept { return kind_; }
  int nbits() const noexcept { return nbits_; }

  void set(int bit) noexcept { words_[bit >> 6] |= std::uint64_t { 1 } << (bit & 63); }
  bool test(int bit) const noexcept {
    return (words_[bit >> 6] >> (bit & 63)) & 1U;
  }
  int popcount() const noexcept;
  std::vector<int> on_bits() const;

  // Bit i is byte i / 8, mask 1 << (i % 8); bytes in ascending order.
  std::string hex() const;

  const std::vector<std::uint64_t> &words() const noexcept { return words_; }

  bool operator==(const BitFingerprint &) const = default;

private:
  FingerprintKind kind_ = FingerprintKind::kEcfp;
  int nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct FingerprintOptions {
  FingerprintKind kind = FingerprintKind::kEcfp;
  int nbits = 2048;
  int radius = 2;    // ecfp
  int max_path = 7;  // rdkfp
};

BitFingerprint ecfp(const MoleculeGraph &mol, int radius = 2,
                    int nbits = 2048);
BitFingerprint rdkfp(const MoleculeGraph &mol, int max_path = 7,
                     int nbits = 2048);
BitFingerprint fingerprint(const MoleculeGraph &mol,
                           const FingerprintOptions &options);

// |a & b| / |a | b|, 0 when both are empty. Throws kKindMismatch or
// kLengthMismatch.
double tanimoto(const BitFingerprint &a, const BitFingerprint &b);

struct ConcatFingerprint {
  std::vector<BitFingerprint> segments;
  bool replicated = false;

  int nbits() const noexcept;
  std::string hex() const;

  bool operator==(const ConcatFingerprint &) const = default;
};

/// The molecule's own fingerprint first, then every BRICS fragment whose
/// similarity to it is >= threshold, all paired with `labels`.
std::vector<std::pair<BitFingerprint, LabelVector>>
fp_break(const MoleculeGraph &mol, const LabelVector &labels,
         const FingerprintOptions &options = {}, double threshold = 0.6,
         int max_depth = 2);

ConcatFingerprint replicated_fp(const MoleculeGraph &mol,
                                const FingerprintOptions &options = {},
                                int k = 4);

/// The replicated fingerprint first, then n_concat concatenations of k
/// draws with replacement from {molecule} + fragments.
std::vector<std::pair<ConcatFingerprint, LabelVector>>
fp_concat(const MoleculeGraph &mol, const LabelVector &labels, RngState &rng,
          const FingerprintOptions &options = {}, int k = 4,
          int n_concat = 4, int max_depth = 2);

}  // namespace chemaug

#endif  // CHEMAUG_FINGERPRINT_H_
