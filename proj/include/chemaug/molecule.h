//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_MOLECULE_H_
#define CHEMAUG_MOLECULE_H_

#include <cstdint>
#include <span>
#include <vector>

namespace chemaug {

enum class Chirality : std::uint8_t {
  kNone = 0,
  kClockwise = 1,
  kCounterClockwise = 2,
};

enum class BondOrder : std::uint8_t {
  kSingle = 0,
  kDouble = 1,
  kTriple = 2,
  kAromatic = 3,
};

enum class BondDirection : std::uint8_t {
  kNone = 0,
  kUp = 1,
  kDown = 2,
};

struct Atom {
  int element = 6;  // atomic number; 0 is an attachment-point wildcard
  int formal_charge = 0;
  bool aromatic = false;
  // Relative to the reference neighbor order: an implicit hydrogen first
  // (when explicit_h > 0), then bonded atoms in increasing bond index.
  Chirality chirality = Chirality::kNone;
  int explicit_h = 0;
  // Mass number, or the link label on a wildcard attachment point.
  int isotope = 0;

  bool operator==(const Atom &) const = default;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;
  // Read in the begin -> end sense.
  BondDirection direction = BondDirection::kNone;

  int other(int atom) const noexcept { return atom == begin ? end : begin; }

  bool operator==(const Bond &) const = default;
};

struct Neighbor {
  int atom;
  int bond;
};

struct MoleculeGraph {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;

  int num_atoms() const noexcept { return static_cast<int>(atoms.size()); }
  int num_bonds() const noexcept { return static_cast<int>(bonds.size()); }
  bool empty() const noexcept { return atoms.empty(); }

  bool operator==(const MoleculeGraph &) const = default;
};

// Per-atom neighbor lists, each ordered by bond index.
using Adjacency = std::vector<std::vector<Neighbor>>;

Adjacency adjacency(const MoleculeGraph &mol);

// -1 when the atoms are not bonded.
int find_bond(const MoleculeGraph &mol, int a, int b);

struct RingInfo {
  std::vector<bool> atom_in_ring;
  std::vector<bool> bond_in_ring;
};

// A bond is a ring bond iff it is not a bridge of the graph.
RingInfo ring_info(const MoleculeGraph &mol, const Adjacency &adj);
RingInfo ring_info(const MoleculeGraph &mol);

// Simple cycles with at most max_size atoms, each as an atom sequence that
// starts at its smallest atom index.
std::vector<std::vector<int>> small_cycles(const MoleculeGraph &mol,
                                           const Adjacency &adj, int max_size);

// Component label per atom; labels are numbered by first appearance.
std::vector<int> connected_components(const MoleculeGraph &mol,
                                      const Adjacency &adj, int *count);

// Bond order as a valence contribution (aromatic counts 1).
int bond_valence(BondOrder order) noexcept;

// Throws Error(kInvalidArgument) naming the first violated invariant.
void validate(const MoleculeGraph &mol);

// new index of old atom i is perm[i]. Bonds keep their order and their
// begin/end sense, so chirality and bond directions remain valid.
MoleculeGraph permute_atoms(const MoleculeGraph &mol,
                            std::span<const int> perm);

// Keeps the listed atoms (in the given order) and every bond among them.
// map_out, if non-null, receives old -> new index (-1 for dropped atoms).
MoleculeGraph induced_subgraph(const MoleculeGraph &mol,
                               std::span<const int> keep,
                               std::vector<int> *map_out = nullptr);

// Marks Kekule rings aromatic when they satisfy a Huckel 4n+2 count; atoms
// and bonds already aromatic are left alone.
void perceive_aromaticity(MoleculeGraph &mol);

// Exact graph isomorphism on (element, charge, aromatic, explicit_h,
// isotope) atoms and bond orders. Backtracking; intended for test-sized
// molecules.
bool isomorphic(const MoleculeGraph &a, const MoleculeGraph &b);

}  // namespace chemaug

#endif  // CHEMAUG_MOLECULE_H_
