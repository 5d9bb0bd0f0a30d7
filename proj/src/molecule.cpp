//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include "chemaug/molecule.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include "chemaug/error.h"

namespace chemaug {

Adjacency adjacency(const MoleculeGraph &mol) {
  Adjacency adj(mol.atoms.size());
  for (int b = 0; b < mol.num_bonds(); ++b) {
    const Bond &bond = mol.bonds[b];
    adj[bond.begin].push_back({ bond.end, b });
    adj[bond.end].push_back({ bond.begin, b });
  }
  return adj;
}

int find_bond(const MoleculeGraph &mol, int a, int b) {
  for (int i = 0; i < mol.num_bonds(); ++i) {
    const Bond &bond = mol.bonds[i];
    if ((bond.begin == a && bond.end == b) ||
        (bond.begin == b && bond.end == a))
      return i;
  }
  return -1;
}

int bond_valence(BondOrder order) noexcept {
  switch (order) {
  case BondOrder::kDouble:
    return 2;
  case BondOrder::kTriple:
    return 3;
  default:
    return 1;
  }
}

RingInfo ring_info(const MoleculeGraph &mol) {
  return ring_info(mol, adjacency(mol));
}

RingInfo ring_info(const MoleculeGraph &mol, const Adjacency &adj) {
  const int n = mol.num_atoms();
  RingInfo info;
  info.atom_in_ring.assign(n, false);
  info.bond_in_ring.assign(mol.bonds.size(), true);

  // Tarjan bridge finding, iterative to stay safe on long chains.
  std::vector<int> disc(n, -1), low(n, 0);
  int timer = 0;
  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (int s = 0; s < n; ++s) {
    if (disc[s] >= 0)
      continue;
    disc[s] = low[s] = timer++;
    stack.push_back({ s, -1, 0 });
    while (!stack.empty()) {
      Frame &f = stack.back();
      if (f.next < adj[f.atom].size()) {
        const Neighbor nb = adj[f.atom][f.next++];
        if (nb.bond == f.parent_bond)
          continue;
        if (disc[nb.atom] < 0) {
          disc[nb.atom] = low[nb.atom] = timer++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        } else {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        Frame &parent = stack.back();
        low[parent.atom] = std::min(low[parent.atom], low[done.atom]);
        if (low[done.atom] > disc[parent.atom])
          info.bond_in_ring[done.parent_bond] = false;
      }
    }
  }

  for (int b = 0; b < mol.num_bonds(); ++b) {
    if (info.bond_in_ring[b]) {
      info.atom_in_ring[mol.bonds[b].begin] = true;
      info.atom_in_ring[mol.bonds[b].end] = true;
    }
  }
  return info;
}

std::vector<std::vector<int>> small_cycles(const MoleculeGraph &mol,
                                           const Adjacency &adj,
                                           int max_size) {
  std::vector<std::vector<int>> cycles;
  const int n = mol.num_atoms();
  std::vector<int> path;
  std::vector<bool> on_path(n, false);

  std::function<void(int, int)> extend = [&](int start, int atom) {
    for (const Neighbor &nb: adj[atom]) {
      if (nb.atom == start && path.size() >= 3) {
        // each cycle is seen in both directions; keep one
        if (path[1] < path.back())
          cycles.push_back(path);
        continue;
      }
      if (nb.atom <= start || on_path[nb.atom])
        continue;
      if (static_cast<int>(path.size()) >= max_size)
        continue;
      on_path[nb.atom] = true;
      path.push_back(nb.atom);
      extend(start, nb.atom);
      path.pop_back();
      on_path[nb.atom] = false;
    }
  };

  const RingInfo rings = ring_info(mol, adj);
  for (int s = 0; s < n; ++s) {
    if (!rings.atom_in_ring[s])
      continue;
    path.assign(1, s);
    on_path[s] = true;
    extend(s, s);
    on_path[s] = false;
  }
  std::sort(cycles.begin(), cycles.end(), [](const auto &a, const auto &b) {
    if (a.size() != b.size())
      return a.size() < b.size();
    return a < b;
  });
  return cycles;
}

std::vector<int> connected_components(const MoleculeGraph &mol,
                                      const Adjacency &adj, int *count) {
  std::vector<int> label(mol.atoms.size(), -1);
  int next = 0;
  std::vector<int> queue;
  for (int s = 0; s < mol.num_atoms(); ++s) {
    if (label[s] >= 0)
      continue;
    label[s] = next;
    queue.assign(1, s);
    while (!queue.empty()) {
      const int a = queue.back();
      queue.pop_back();
      for (const Neighbor &nb: adj[a]) {
        if (label[nb.atom] < 0) {
          label[nb.atom] = next;
          queue.push_back(nb.atom);
        }
      }
    }
    ++next;
  }
  if (count != nullptr)
    *count = next;
  return label;
}

void validate(const MoleculeGraph &mol) {
  const int n = mol.num_atoms();
  std::set<std::pair<int, int>> seen;
  for (int i = 0; i < n; ++i) {
    const Atom &a = mol.atoms[i];
    if (a.element < 0 || a.element > 118)
      throw Error(ErrorCode::kInvalidArgument,
                  "atom " + std::to_string(i) + " has bad element");
    if (a.explicit_h < 0)
      throw Error(ErrorCode::kInvalidArgument,
                  "atom " + std::to_string(i) + " has negative H count");
  }
  for (int b = 0; b < mol.num_bonds(); ++b) {
    const Bond &bond = mol.bonds[b];
    if (bond.begin < 0 || bond.begin >= n || bond.end < 0 || bond.end >= n
        || bond.begin == bond.end)
      throw Error(ErrorCode::kInvalidArgument,
                  "bond " + std::to_string(b) + " has bad endpoints");
    if (!seen.insert(std::minmax(bond.begin, bond.end)).second)
      throw Error(ErrorCode::kInvalidArgument,
                  "bond " + std::to_string(b) + " duplicates an earlier bond");
    if (bond.order == BondOrder::kAromatic
        && (!mol.atoms[bond.begin].aromatic || !mol.atoms[bond.end].aromatic))
      throw Error(ErrorCode::kInvalidArgument,
                  "aromatic bond " + std::to_string(b)
                      + " joins a non-aromatic atom");
  }
}

MoleculeGraph permute_atoms(const MoleculeGraph &mol,
                            std::span<const int> perm) {
  if (perm.size() != mol.atoms.size())
    throw Error(ErrorCode::kInvalidArgument, "permutation size mismatch");
  MoleculeGraph out;
  out.atoms.resize(mol.atoms.size());
  for (std::size_t i = 0; i < perm.size(); ++i)
    out.atoms[perm[i]] = mol.atoms[i];
  out.bonds = mol.bonds;
  for (Bond &b: out.bonds) {
    b.begin = perm[b.begin];
    b.end = perm[b.end];
  }
  return out;
}

MoleculeGraph induced_subgraph(const MoleculeGraph &mol,
                               std::span<const int> keep,
                               std::vector<int> *map_out) {
  std::vector<int> map(mol.atoms.size(), -1);
  MoleculeGraph out;
  out.atoms.reserve(keep.size());
  for (int old: keep) {
    map[old] = out.num_atoms();
    out.atoms.push_back(mol.atoms[old]);
  }
  for (const Bond &b: mol.bonds) {
    if (map[b.begin] >= 0 && map[b.end] >= 0) {
      Bond nb = b;
      nb.begin = map[b.begin];
      nb.end = map[b.end];
      out.bonds.push_back(nb);
    }
  }
  if (map_out != nullptr)
    *map_out = std::move(map);
  return out;
}

namespace {

// pi electrons an atom donates to a candidate ring; -1 if it cannot take
// part in an aromatic sextet.
int pi_electrons(const MoleculeGraph &mol, const Adjacency &adj,
                 const RingInfo &rings, int atom) {
  const Atom &a = mol.atoms[atom];
  switch (a.element) {
  case 5:
  case 6:
  case 7:
  case 8:
  case 15:
  case 16:
  case 34:
    break;
  default:
    return -1;
  }

  int multiple = 0;
  bool ring_double = false;
  bool exo_double = false;
  for (const Neighbor &nb: adj[atom]) {
    const BondOrder order = mol.bonds[nb.bond].order;
    if (order == BondOrder::kTriple)
      return -1;
    if (order == BondOrder::kDouble) {
      ++multiple;
      if (rings.bond_in_ring[nb.bond])
        ring_double = true;
      else
        exo_double = true;
    }
  }
  if (multiple > 1)
    return -1;
  if (ring_double)
    return 1;
  if (exo_double)
    return a.element == 6 ? 0 : -1;

  const int degree = static_cast<int>(adj[atom].size());
  switch (a.element) {
  case 6:
    if (a.formal_charge == -1)
      return 2;
    if (a.formal_charge == 1)
      return 0;
    return -1;
  case 5:
    return a.formal_charge == 0 && degree + a.explicit_h == 3 ? 0 : -1;
  case 7:
  case 15:
    return a.formal_charge == 0 && degree + a.explicit_h == 3 ? 2 : -1;
  case 8:
  case 16:
  case 34:
    return a.formal_charge == 0 && degree == 2 ? 2 : -1;
  default:
    return -1;
  }
}

}  // namespace

void perceive_aromaticity(MoleculeGraph &mol) {
  if (mol.bonds.empty())
    return;
  const Adjacency adj = adjacency(mol);
  const RingInfo rings = ring_info(mol, adj);
  const auto cycles = small_cycles(mol, adj, 7);

  std::vector<bool> mark_atom(mol.atoms.size(), false);
  std::vector<int> mark_bonds;
  for (const auto &cycle: cycles) {
    if (cycle.size() < 5)
      continue;
    bool candidate = true;
    int electrons = 0;
    for (int atom: cycle) {
      if (mol.atoms[atom].aromatic) {
        candidate = false;
        break;
      }
      const int e = pi_electrons(mol, adj, rings, atom);
      if (e < 0) {
        candidate = false;
        break;
      }
      electrons += e;
    }
    if (!candidate || electrons < 2 || (electrons - 2) % 4 != 0)
      continue;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const int a = cycle[k];
      const int b = cycle[(k + 1) % cycle.size()];
      mark_atom[a] = true;
      mark_bonds.push_back(find_bond(mol, a, b));
    }
  }
  for (int i = 0; i < mol.num_atoms(); ++i)
    if (mark_atom[i])
      mol.atoms[i].aromatic = true;
  for (int b: mark_bonds) {
    mol.bonds[b].order = BondOrder::kAromatic;
    mol.bonds[b].direction = BondDirection::kNone;
  }
}

namespace {

auto atom_key(const Atom &a, int degree) {
  return std::make_tuple(a.element, a.formal_charge, a.aromatic,
                         a.explicit_h, a.isotope, degree);
}

}  // namespace

bool isomorphic(const MoleculeGraph &a, const MoleculeGraph &b) {
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds())
    return false;
  const int n = a.num_atoms();
  const Adjacency adj_a = adjacency(a), adj_b = adjacency(b);

  // Match atoms of `a` in BFS order so each new atom has a mapped neighbor.
  std::vector<int> order;
  std::vector<bool> seen(n, false);
  for (int s = 0; s < n; ++s) {
    if (seen[s])
      continue;
    seen[s] = true;
    std::size_t head = order.size();
    order.push_back(s);
    while (head < order.size()) {
      const int x = order[head++];
      for (const Neighbor &nb: adj_a[x]) {
        if (!seen[nb.atom]) {
          seen[nb.atom] = true;
          order.push_back(nb.atom);
        }
      }
    }
  }

  std::vector<int> map(n, -1), used(n, 0);
  std::function<bool(int)> search = [&](int depth) -> bool {
    if (depth == n)
      return true;
    const int x = order[depth];
    const auto key = atom_key(a.atoms[x], static_cast<int>(adj_a[x].size()));
    for (int y = 0; y < n; ++y) {
      if (used[y]
          || atom_key(b.atoms[y], static_cast<int>(adj_b[y].size())) != key)
        continue;
      bool ok = true;
      for (const Neighbor &nb: adj_a[x]) {
        if (map[nb.atom] < 0)
          continue;
        const int bb = find_bond(b, y, map[nb.atom]);
        if (bb < 0 || b.bonds[bb].order != a.bonds[nb.bond].order) {
          ok = false;
          break;
        }
      }
      if (!ok)
        continue;
      map[x] = y;
      used[y] = 1;
      if (search(depth + 1))
        return true;
      map[x] = -1;
      used[y] = 0;
    }
    return false;
  };
  return search(0);
}

}  // namespace chemaug
