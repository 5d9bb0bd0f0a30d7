//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "chemaug/cli.h"

int main(int argc, char **argv) {
  return chemaug::run(argc, argv, std::cout, std::cerr);
}
