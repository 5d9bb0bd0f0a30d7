//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include "chemaug/molgraph.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chemaug/error.h"
#include "chemaug/smiles.h"

namespace chemaug {

std::string_view to_string(Provenance p) {
  switch (p) {
  case Provenance::kOriginal:
    return "original";
  case Provenance::kAtomMask:
    return "atom_mask";
  case Provenance::kBondDelete:
    return "bond_delete";
  case Provenance::kSubstructure:
    return "substructure";
  case Provenance::kPerturb:
    return "perturb";
  case Provenance::kRotate:
    return "rotate";
  case Provenance::kSwapAxes:
    return "swap_axes";
  case Provenance::kTranslate:
    return "translate";
  case Provenance::kSupercell:
    return "supercell";
  case Provenance::kFpBreak:
    return "fp_break";
  case Provenance::kFpConcat:
    return "fp_concat";
  }
  return "unknown";
}

LabelVector mask_labels(std::span<const std::optional<double>> raw) {
  LabelVector out;
  out.values.reserve(raw.size());
  out.mask.reserve(raw.size());
  for (const auto &v: raw) {
    out.values.push_back(v.value_or(0.0));
    out.mask.push_back(v.has_value() ? 1 : 0);
  }
  return out;
}

MolGraphRecord build_graph_record(const MoleculeGraph &mol,
                                  const LabelVector &labels) {
  MolGraphRecord rec;
  rec.nodes.reserve(mol.atoms.size());
  for (const Atom &a: mol.atoms)
    rec.nodes.push_back({ a.element, static_cast<int>(a.chirality), false });
  rec.edges.reserve(mol.bonds.size());
  for (const Bond &b: mol.bonds)
    rec.edges.push_back({ b.begin, b.end, static_cast<int>(b.order),
                          static_cast<int>(b.direction) });
  rec.labels = labels;
  return rec;
}

namespace {

// First k entries of a seeded partial Fisher-Yates shuffle of 0..n-1.
std::vector<int> sample_without_replacement(int n, int k, RngState &rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int t = 0; t < k; ++t) {
    const int j = t + static_cast<int>(rng.below(n - t));
    std::swap(order[t], order[j]);
  }
  order.resize(k);
  return order;
}

void check_ratio(double ratio) {
  if (!(ratio >= 0.0 && ratio <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "ratio must be in [0, 1]");
}

}  // namespace

MolGraphRecord mask_atoms(const MolGraphRecord &rec, double ratio,
                          RngState &rng) {
  check_ratio(ratio);
  MolGraphRecord out = rec;
  out.provenance = Provenance::kAtomMask;
  const int n = static_cast<int>(rec.nodes.size());
  if (ratio == 0.0 || n == 0)
    return out;
  const int k = std::min<int>(n, std::max<long>(1, std::lround(ratio * n)));
  for (int i: sample_without_replacement(n, k, rng)) {
    GraphNode &node = out.nodes[i];
    node.atom_type = kMaskAtomType;
    node.chirality = 0;
    node.masked = true;
  }
  return out;
}

MolGraphRecord delete_bonds(const MolGraphRecord &rec, double ratio,
                            RngState &rng) {
  check_ratio(ratio);
  MolGraphRecord out = rec;
  out.provenance = Provenance::kBondDelete;
  const int m = static_cast<int>(rec.edges.size());
  const int k = std::min<int>(m, std::lround(ratio * m));
  if (k == 0)
    return out;
  std::vector<bool> removed(m, false);
  for (int e: sample_without_replacement(m, k, rng))
    removed[e] = true;
  out.edges.clear();
  for (int e = 0; e < m; ++e)
    if (!removed[e])
      out.edges.push_back(rec.edges[e]);
  return out;
}

namespace {

MolGraphRecord fragment_record(const MolGraphRecord &source,
                               const FragmentNode &node) {
  MolGraphRecord out = build_graph_record(node.mol, source.labels);
  out.id = source.id;
  out.parent_id = source.parent_id.empty() ? source.id : source.parent_id;
  out.provenance = Provenance::kSubstructure;
  return out;
}

}  // namespace

MolGraphRecord remove_substructure(const MolGraphRecord &source,
                                   const FragmentTree &tree, RngState &rng) {
  const int count = tree.num_fragments();
  if (count == 0)
    return source;
  const int pick = 1 + static_cast<int>(rng.below(count));
  return fragment_record(source, tree.nodes[pick]);
}

std::vector<MolGraphRecord> all_substructures(const MolGraphRecord &source,
                                              const FragmentTree &tree) {
  std::vector<MolGraphRecord> out;
  for (int i = 1; i < static_cast<int>(tree.nodes.size()); ++i)
    out.push_back(fragment_record(source, tree.nodes[i]));
  return out;
}

namespace {

// Assigns alternating orders to the aromatic bonds of each aromatic system
// holding a marked atom, clears the aromatic flags there and perceives
// aromaticity again. Systems without a valid assignment stay as they are.
void reperceive_systems(MoleculeGraph &mol, const std::vector<bool> &marked) {
  const int n = mol.num_atoms();
  const Adjacency adj = adjacency(mol);
  std::vector<int> system(n, -1);
  bool changed = false;
  for (int seed = 0; seed < n; ++seed) {
    if (!marked[seed] || !mol.atoms[seed].aromatic || system[seed] >= 0)
      continue;
    std::vector<int> members { seed };
    system[seed] = seed;
    for (std::size_t k = 0; k < members.size(); ++k)
      for (const Neighbor &nb: adj[members[k]])
        if (mol.bonds[nb.bond].order == BondOrder::kAromatic
            && system[nb.atom] < 0) {
          system[nb.atom] = seed;
          members.push_back(nb.atom);
        }

    // atoms that still need one double bond inside the system
    std::vector<bool> need(n, false);
    for (int a: members) {
      int sum = mol.atoms[a].explicit_h;
      for (const Neighbor &nb: adj[a]) {
        const BondOrder o = mol.bonds[nb.bond].order;
        sum += o == BondOrder::kAromatic ? 1 : bond_valence(o);
      }
      Atom plain = mol.atoms[a];
      plain.aromatic = false;
      plain.explicit_h = 0;
      need[a] = default_implicit_h(plain, sum) >= 1;
    }
    std::vector<int> mate(n, -1);
    auto solve = [&](auto &&self, std::size_t from) -> bool {
      std::size_t k = from;
      while (k < members.size() && (!need[members[k]] || mate[members[k]] >= 0))
        ++k;
      if (k == members.size())
        return true;
      const int a = members[k];
      for (const Neighbor &nb: adj[a]) {
        if (mol.bonds[nb.bond].order != BondOrder::kAromatic
            || !need[nb.atom] || mate[nb.atom] >= 0)
          continue;
        mate[a] = nb.atom;
        mate[nb.atom] = a;
        if (self(self, k + 1))
          return true;
        mate[a] = mate[nb.atom] = -1;
      }
      return false;
    };
    if (!solve(solve, 0))
      continue;
    for (int a: members) {
      mol.atoms[a].aromatic = false;
      for (const Neighbor &nb: adj[a]) {
        Bond &b = mol.bonds[nb.bond];
        if (b.order == BondOrder::kAromatic && nb.atom > a)
          b.order = mate[a] == nb.atom ? BondOrder::kDouble
                                       : BondOrder::kSingle;
      }
    }
    changed = true;
  }
  if (changed)
    perceive_aromaticity(mol);
}

}  // namespace

MoleculeGraph murcko_scaffold(const MoleculeGraph &mol) {
  const int n = mol.num_atoms();
  const Adjacency adj = adjacency(mol);
  const RingInfo rings = ring_info(mol, adj);

  std::vector<bool> alive(n, true);
  std::vector<int> degree(n), extra_h(n, 0);
  std::vector<bool> lost_multiple(n, false);
  for (int a = 0; a < n; ++a)
    degree[a] = static_cast<int>(adj[a].size());

  std::vector<int> stack;
  for (int a = 0; a < n; ++a)
    if (!rings.atom_in_ring[a] && degree[a] <= 1)
      stack.push_back(a);
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    if (!alive[a])
      continue;
    alive[a] = false;
    for (const Neighbor &nb: adj[a]) {
      if (!alive[nb.atom])
        continue;
      const BondOrder order = mol.bonds[nb.bond].order;
      extra_h[nb.atom] += bond_valence(order);
      if (order == BondOrder::kDouble || order == BondOrder::kTriple)
        lost_multiple[nb.atom] = true;
      if (--degree[nb.atom] <= 1 && !rings.atom_in_ring[nb.atom])
        stack.push_back(nb.atom);
    }
  }

  std::vector<int> keep;
  for (int a = 0; a < n; ++a)
    if (alive[a])
      keep.push_back(a);
  MoleculeGraph out = induced_subgraph(mol, keep);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    Atom &atom = out.atoms[i];
    atom.explicit_h += extra_h[keep[i]];
    atom.chirality = Chirality::kNone;
  }
  for (Bond &b: out.bonds)
    b.direction = BondDirection::kNone;
  // an aromatic ring that lost an exocyclic double bond may no longer be one
  std::vector<bool> marked(keep.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < keep.size(); ++i)
    if (lost_multiple[keep[i]] && out.atoms[i].aromatic)
      marked[i] = any = true;
  if (any)
    reperceive_systems(out, marked);
  return out;
}

std::string scaffold_key(const MoleculeGraph &mol) {
  const MoleculeGraph scaffold = murcko_scaffold(mol);
  if (scaffold.empty())
    return {};
  return write_smiles(scaffold);
}

}  // namespace chemaug
