//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_RECORD_H_
#define CHEMAUG_RECORD_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace chemaug {

enum class Provenance {
  kOriginal,
  kAtomMask,
  kBondDelete,
  kSubstructure,
  kPerturb,
  kRotate,
  kSwapAxes,
  kTranslate,
  kSupercell,
  kFpBreak,
  kFpConcat,
};

std::string_view to_string(Provenance p);

struct LabelVector {
  std::vector<double> values;
  std::vector<std::uint8_t> mask;

  bool operator==(const LabelVector &) const = default;
};

// Absent entries become value 0 with mask 0.
LabelVector mask_labels(std::span<const std::optional<double>> raw);

}  // namespace chemaug

#endif  // CHEMAUG_RECORD_H_
