//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_SPLIT_H_
#define CHEMAUG_SPLIT_H_

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chemaug/table.h"

namespace chemaug {

enum class SplitMethod { kRandom, kScaffold, kKfold };

// "random_4_1_then_4_1", "scaffold_8_1_1", "kfold"
std::string_view to_string(SplitMethod method);
SplitMethod parse_split_method(std::string_view name);

enum class Partition { kTrain, kValid, kTest };

std::string_view to_string(Partition p);

struct SplitPlan {
  std::vector<int> train;  // each list ascending
  std::vector<int> valid;
  std::vector<int> test;
  std::uint64_t seed = 0;
  SplitMethod method = SplitMethod::kRandom;
  int fold = -1;  // k-fold only

  std::size_t size() const noexcept {
    return train.size() + valid.size() + test.size();
  }
  // Partition of every index in [0, n); throws kInconsistentConfig unless
  // the three lists are disjoint and cover [0, n).
  std::vector<Partition> assignment(int n) const;

  bool operator==(const SplitPlan &) const = default;
};

/// test = ceil(0.2 n), then valid = ceil(0.2 (n - test)) of a seeded
/// permutation. Throws kTooFewRecords for n < 5.
SplitPlan random_split(int n, std::uint64_t seed);

/// Groups by scaffold key, largest group first (ties by key), and fills
/// train, then valid, then test while each is below its share of n.
SplitPlan scaffold_split(std::span<const std::string> keys,
                         const std::array<double, 3> &fractions = { 0.8, 0.1,
                                                                    0.1 });
SplitPlan scaffold_split(const MoleculeTable &table,
                         const std::array<double, 3> &fractions = { 0.8, 0.1,
                                                                    0.1 });

/// k folds of a seeded permutation, the first n % k one larger. Plan i tests
/// fold i and validates on fold (i + 1) % k. Throws kBadK.
std::vector<SplitPlan> kfold(int n, int k, std::uint64_t seed);

// JSON document: {"method", "seed", "n", "plans": [{"fold", "train",
// "valid", "test"}]}.
std::string plans_to_json(std::span<const SplitPlan> plans, int n);
// Throws kMalformedRecord.
std::vector<SplitPlan> plans_from_json(std::string_view text, int *n = nullptr);

}  // namespace chemaug

#endif  // CHEMAUG_SPLIT_H_
