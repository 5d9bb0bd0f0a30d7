//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_CLI_H_
#define CHEMAUG_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace chemaug {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

/// Runs one subcommand (split, augment-crystal, augment-molecule,
/// fingerprint, export, check). args excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);
int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err);

}  // namespace chemaug

#endif  // CHEMAUG_CLI_H_
