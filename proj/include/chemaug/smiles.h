//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_SMILES_H_
#define CHEMAUG_SMILES_H_

#include <string>
#include <string_view>
#include <vector>

#include "chemaug/molecule.h"

namespace chemaug {

/// Parses the MoleculeNet SMILES dialect: organic-subset and bracket atoms
/// (isotope, chirality @/@@, H count, charge, atom class), branches, ring
/// bonds up to %99, bond symbols - = # : / \ and '.' separators. Implicit
/// hydrogens of organic-subset atoms are filled in from the normal valences
/// and Kekule rings are perceived as aromatic.
///
/// Errors carry the byte offset of the offending character: kUnclosedRing,
/// kUnbalancedParenthesis, kUnknownElement, kValenceError, and kSmilesSyntax
/// for anything else malformed.
MoleculeGraph parse_smiles(std::string_view text);

struct SmilesWriteOptions {
  bool allow_wildcards = true;
};

/// Canonical SMILES. Isomorphic graphs give byte-identical text.
std::string write_smiles(const MoleculeGraph &mol,
                         const SmilesWriteOptions &options = {});

/// Canonical atom ranks (0 = first), a permutation of 0..n-1. Atoms are
/// ranked by iterative refinement of (element, charge, degree, H count,
/// aromatic, isotope) over bonded neighbors; remaining ties are broken at
/// the lowest original index and refined again.
std::vector<int> canonical_ranks(const MoleculeGraph &mol);

// Hydrogen count an organic-subset atom written without brackets would get.
int default_implicit_h(const Atom &atom, int bond_valence_sum);

}  // namespace chemaug

#endif  // CHEMAUG_SMILES_H_
