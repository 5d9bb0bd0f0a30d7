//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_MOLGRAPH_H_
#define CHEMAUG_MOLGRAPH_H_

#include <string>
#include <vector>

#include "chemaug/brics.h"
#include "chemaug/molecule.h"
#include "chemaug/record.h"
#include "chemaug/rng.h"

namespace chemaug {

// atom_type is the atomic number (wildcard 0); masked nodes use this index.
inline constexpr int kMaskAtomType = 119;

struct GraphNode {
  int atom_type = 0;
  int chirality = 0;
  bool masked = false;

  bool operator==(const GraphNode &) const = default;
};

struct GraphEdge {
  int i = 0;
  int j = 0;
  int bond_type = 0;  // single, double, triple, aromatic
  int direction = 0;  // none, up, down

  bool operator==(const GraphEdge &) const = default;
};

struct MolGraphRecord {
  std::string id;
  std::string parent_id;
  Provenance provenance = Provenance::kOriginal;
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;
  LabelVector labels;

  bool operator==(const MolGraphRecord &) const = default;
};

MolGraphRecord build_graph_record(const MoleculeGraph &mol,
                                  const LabelVector &labels);

/// Masks exactly max(1, round(ratio * n)) distinct nodes (none when ratio is
/// 0). Masked nodes get kMaskAtomType and chirality 0.
MolGraphRecord mask_atoms(const MolGraphRecord &rec, double ratio,
                          RngState &rng);

/// Removes exactly round(ratio * |E|) distinct edges; the rest keep order.
MolGraphRecord delete_bonds(const MolGraphRecord &rec, double ratio,
                            RngState &rng);

/// Graph record of one uniformly chosen non-root fragment carrying the
/// source labels, or `source` unchanged if the tree has no fragments.
MolGraphRecord remove_substructure(const MolGraphRecord &source,
                                   const FragmentTree &tree, RngState &rng);

// One record per fragment, in tree order.
std::vector<MolGraphRecord> all_substructures(const MolGraphRecord &source,
                                              const FragmentTree &tree);

/// Repeatedly strips non-ring atoms of degree <= 1. Stereo marks are
/// dropped; removed neighbors are replaced by hydrogens.
MoleculeGraph murcko_scaffold(const MoleculeGraph &mol);

// Canonical SMILES of the scaffold; empty for acyclic molecules.
std::string scaffold_key(const MoleculeGraph &mol);

}  // namespace chemaug

#endif  // CHEMAUG_MOLGRAPH_H_
