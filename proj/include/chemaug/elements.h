//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_ELEMENTS_H_
#define CHEMAUG_ELEMENTS_H_

#include <optional>
#include <string_view>

namespace chemaug {

inline constexpr int kMaxAtomicNumber = 118;

// Symbol for atomic number 1..118; "*" for 0.
std::string_view element_symbol(int atomic_number);

// Case-sensitive lookup ("Cl", not "CL"). "*" maps to 0.
std::optional<int> element_from_symbol(std::string_view symbol);

}  // namespace chemaug

#endif  // CHEMAUG_ELEMENTS_H_
