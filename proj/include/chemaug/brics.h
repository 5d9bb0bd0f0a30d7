//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_BRICS_H_
#define CHEMAUG_BRICS_H_

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chemaug/molecule.h"
#include "chemaug/pattern.h"

namespace chemaug {

struct BricsEnvironment {
  std::string label;  // "1" .. "16", "7a", "7b"
  int link = 0;       // numeric part of the label
  SubstructurePattern pattern;
};

struct BricsPair {
  int first;   // indices into BricsRules::environments
  int second;
  BondOrder order;
};

struct BricsRules {
  std::vector<BricsEnvironment> environments;
  std::vector<BricsPair> pairs;

  int find(std::string_view label) const;
};

// Parses the env/pair table format of data/brics_rules.v1.txt.
// Throws kPatternSyntaxError or kInvalidArgument.
BricsRules parse_brics_rules(std::string_view text);

// The table compiled into the library.
const BricsRules &default_brics_rules();
std::string_view default_brics_rules_text();

struct BricsBond {
  int bond;
  std::array<int, 2> links;  // link numbers of the begin and end atoms
  std::array<int, 2> envs;   // environment indices of the begin and end atoms

  bool operator==(const BricsBond &) const = default;
};

/// Acyclic single bonds whose end environments form a pair of the table,
/// ordered by bond index. The first matching pair in table order labels the
/// bond.
std::vector<BricsBond> brics_bonds(const MoleculeGraph &mol,
                                   const BricsRules &rules);
std::vector<BricsBond> brics_bonds(const MoleculeGraph &mol);

struct CleavedPart {
  MoleculeGraph mol;
  std::vector<int> origin;  // atom index in the input molecule, -1 for '*'
};

/// Splits an acyclic bond. Each side gets a wildcard atom whose isotope is
/// the link number of the atom it replaces the partner of; the begin side
/// is returned first. Throws kInvalidArgument for ring bonds.
std::pair<CleavedPart, CleavedPart> cleave_bond(const MoleculeGraph &mol,
                                                int bond, int link_begin,
                                                int link_end);

struct FragmentNode {
  MoleculeGraph mol;
  std::vector<int> origin;  // root atom index per atom, -1 for wildcards
  std::vector<std::pair<int, int>> attachments;  // (atom, link number)
  int depth = 0;
  int parent = -1;
  std::string smiles;
};

/// nodes[0] is the root molecule; fragments follow in discovery order.
struct FragmentTree {
  std::vector<FragmentNode> nodes;

  int num_fragments() const noexcept {
    return nodes.empty() ? 0 : static_cast<int>(nodes.size()) - 1;
  }
};

/// Breadth-first recursive single cuts, deduplicated by canonical SMILES.
FragmentTree brics_fragments(const MoleculeGraph &mol, int max_depth = 2);
FragmentTree brics_fragments(const MoleculeGraph &mol, int max_depth,
                             const BricsRules &rules);

}  // namespace chemaug

#endif  // CHEMAUG_BRICS_H_
