//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_CIF_H_
#define CHEMAUG_CIF_H_

#include <string>
#include <string_view>

#include "chemaug/crystal_structure.h"

namespace chemaug {

/// Reads the first data block of a CIF: the six _cell_* parameters and the
/// _atom_site_ loop with fractional coordinates. Symmetry operators from
/// _symmetry_equiv_pos_as_xyz (or _space_group_symop_operation_xyz) are
/// applied to expand to P1; images of one element closer than 1e-3 A are
/// merged.
///
/// Throws kMissingCellParameter, kMissingAtomLoop or kBadNumber naming the
/// tag, kPartialOccupancyUnsupported for occupancies other than 1, and
/// kUnknownElement for unrecognized species.
CrystalStructure parse_cif(std::string_view text);

/// P1 CIF in the fixed layout of docs/cif-format.md.
std::string write_cif(const CrystalStructure &s,
                      std::string_view block_name = "chemaug");

}  // namespace chemaug

#endif  // CHEMAUG_CIF_H_
