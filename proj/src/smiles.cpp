//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include "chemaug/smiles.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <numeric>
#include <string>
#include <utility>

#include "chemaug/elements.h"
#include "chemaug/error.h"

namespace chemaug {

namespace {

std::span<const int> normal_valences(int element) {
  static constexpr int kB[] = { 3 };
  static constexpr int kC[] = { 4 };
  static constexpr int kN[] = { 3, 5 };
  static constexpr int kO[] = { 2 };
  static constexpr int kS[] = { 2, 4, 6 };
  static constexpr int kHalogen[] = { 1 };
  switch (element) {
  case 5:
    return kB;
  case 6:
    return kC;
  case 7:
  case 15:
    return kN;
  case 8:
    return kO;
  case 16:
    return kS;
  case 9:
  case 17:
  case 35:
  case 53:
    return kHalogen;
  default:
    return {};
  }
}

bool aromatic_capable(int element) {
  switch (element) {
  case 5:
  case 6:
  case 7:
  case 8:
  case 15:
  case 16:
  case 33:
  case 34:
  case 52:
    return true;
  default:
    return false;
  }
}

// Parity (0 even, 1 odd) of the permutation taking `from` to `to`; both
// hold the same distinct values.
int permutation_parity(const std::vector<int> &from,
                       const std::vector<int> &to) {
  std::vector<int> pos(from.size());
  for (std::size_t i = 0; i < to.size(); ++i) {
    auto it = std::find(from.begin(), from.end(), to[i]);
    pos[i] = static_cast<int>(it - from.begin());
  }
  int inversions = 0;
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = i + 1; j < pos.size(); ++j)
      if (pos[i] > pos[j])
        ++inversions;
  return inversions & 1;
}

Chirality flip(Chirality c) {
  switch (c) {
  case Chirality::kClockwise:
    return Chirality::kCounterClockwise;
  case Chirality::kCounterClockwise:
    return Chirality::kClockwise;
  default:
    return c;
  }
}

BondDirection flip(BondDirection d) {
  switch (d) {
  case BondDirection::kUp:
    return BondDirection::kDown;
  case BondDirection::kDown:
    return BondDirection::kUp;
  default:
    return d;
  }
}

constexpr int kImplicitH = -1;

// Reference neighbor order used by Atom::chirality.
std::vector<int> reference_order(const Atom &atom,
                                 const std::vector<Neighbor> &nbrs) {
  std::vector<int> order;
  if (atom.explicit_h > 0)
    order.push_back(kImplicitH);
  for (const Neighbor &nb: nbrs)
    order.push_back(nb.atom);
  return order;
}

class SmilesParser {
public:
  explicit SmilesParser(std::string_view text): text_(text) { }

  MoleculeGraph parse() {
    if (text_.empty())
      throw Error(ErrorCode::kSmilesSyntax, "empty SMILES", 0);

    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      switch (c) {
      case '(':
        if (prev_ < 0)
          fail(ErrorCode::kSmilesSyntax, "branch without a preceding atom");
        if (bond_.set)
          fail(ErrorCode::kSmilesSyntax, "bond symbol before branch");
        branches_.push_back({ prev_, pos_ });
        ++pos_;
        break;
      case ')':
        if (branches_.empty())
          fail(ErrorCode::kUnbalancedParenthesis, "unmatched ')'");
        if (bond_.set)
          fail(ErrorCode::kSmilesSyntax, "dangling bond symbol");
        prev_ = branches_.back().first;
        branches_.pop_back();
        ++pos_;
        break;
      case '-':
      case '=':
      case '#':
      case ':':
      case '/':
      case '\\':
      case '$':
        read_bond_symbol(c);
        break;
      case '.':
        if (bond_.set)
          fail(ErrorCode::kSmilesSyntax, "dangling bond symbol");
        prev_ = -1;
        ++pos_;
        break;
      case '%':
      case '0':
      case '1':
      case '2':
      case '3':
      case '4':
      case '5':
      case '6':
      case '7':
      case '8':
      case '9':
        read_ring_closure();
        break;
      case '[':
        read_bracket_atom();
        break;
      default:
        read_organic_atom();
        break;
      }
    }

    if (bond_.set)
      throw Error(ErrorCode::kSmilesSyntax, "dangling bond symbol",
                  bond_.offset);
    if (!branches_.empty())
      throw Error(ErrorCode::kUnbalancedParenthesis, "unclosed '('",
                  branches_.back().second);
    for (const RingOpen &r: rings_)
      if (r.open)
        throw Error(ErrorCode::kUnclosedRing, "ring bond never closed",
                    r.offset);
    if (mol_.atoms.empty())
      throw Error(ErrorCode::kSmilesSyntax, "no atoms", 0);

    demote_acyclic_aromatic_bonds();
    assign_implicit_hydrogens();
    normalize_chirality();
    perceive_aromaticity(mol_);
    return std::move(mol_);
  }

private:
  struct PendingBond {
    bool set = false;
    BondOrder order = BondOrder::kSingle;
    BondDirection direction = BondDirection::kNone;
    std::size_t offset = 0;
  };

  struct RingOpen {
    bool open = false;
    int atom = -1;
    PendingBond bond;
    std::size_t offset = 0;
    std::size_t slot = 0;
  };

  [[noreturn]] void fail(ErrorCode code, std::string message) const {
    throw Error(code, std::move(message), pos_);
  }

  void read_bond_symbol(char c) {
    if (bond_.set)
      fail(ErrorCode::kSmilesSyntax, "two consecutive bond symbols");
    if (prev_ < 0)
      fail(ErrorCode::kSmilesSyntax, "bond symbol without a preceding atom");
    PendingBond b;
    b.set = true;
    b.offset = pos_;
    switch (c) {
    case '-':
      b.order = BondOrder::kSingle;
      break;
    case '=':
      b.order = BondOrder::kDouble;
      break;
    case '#':
      b.order = BondOrder::kTriple;
      break;
    case ':':
      b.order = BondOrder::kAromatic;
      break;
    case '/':
      b.direction = BondDirection::kUp;
      break;
    case '\\':
      b.direction = BondDirection::kDown;
      break;
    default:
      fail(ErrorCode::kUnsupportedFeature, "quadruple bonds");
    }
    bond_ = b;
    ++pos_;
  }

  void read_ring_closure() {
    if (prev_ < 0)
      fail(ErrorCode::kSmilesSyntax, "ring bond without a preceding atom");
    const std::size_t start = pos_;
    int number;
    if (text_[pos_] == '%') {
      if (pos_ + 2 >= text_.size() || !std::isdigit(text_[pos_ + 1])
          || !std::isdigit(text_[pos_ + 2]))
        fail(ErrorCode::kSmilesSyntax, "'%' must be followed by two digits");
      number = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
      pos_ += 3;
    } else {
      number = text_[pos_] - '0';
      ++pos_;
    }

    RingOpen &r = rings_[number];
    if (!r.open) {
      r.open = true;
      r.atom = prev_;
      r.bond = bond_;
      r.offset = start;
      r.slot = written_[prev_].size();
      written_[prev_].push_back(-2 - number);
      bond_ = {};
      return;
    }

    if (r.atom == prev_)
      throw Error(ErrorCode::kSmilesSyntax, "ring bond to itself", start);
    if (find_bond(mol_, r.atom, prev_) >= 0)
      throw Error(ErrorCode::kSmilesSyntax, "duplicate bond", start);
    if (r.bond.set && bond_.set
        && (r.bond.order != bond_.order
            || (r.bond.direction == BondDirection::kNone)
                   != (bond_.direction == BondDirection::kNone)))
      throw Error(ErrorCode::kSmilesSyntax, "conflicting ring bond symbols",
                  start);

    PendingBond spec = r.bond;
    if (!spec.set && bond_.set) {
      spec = bond_;
      spec.direction = flip(spec.direction);
    }
    add_bond(r.atom, prev_, spec);
    written_[r.atom][r.slot] = prev_;
    written_[prev_].push_back(r.atom);
    r.open = false;
    bond_ = {};
  }

  void read_bracket_atom() {
    const std::size_t start = pos_;
    ++pos_;
    Atom atom;
    atom.explicit_h = 0;

    while (pos_ < text_.size() && std::isdigit(text_[pos_]))
      atom.isotope = atom.isotope * 10 + (text_[pos_++] - '0');

    if (pos_ >= text_.size())
      fail(ErrorCode::kSmilesSyntax, "unterminated bracket atom");
    const char c = text_[pos_];
    if (c == '*') {
      atom.element = 0;
      ++pos_;
    } else if (std::islower(c)) {
      static constexpr std::pair<std::string_view, int> kAromatic[] = {
        { "se", 34 }, { "as", 33 }, { "te", 52 }, { "b", 5 },
        { "c", 6 },   { "n", 7 },   { "o", 8 },   { "p", 15 },
        { "s", 16 },
      };
      bool found = false;
      for (auto [sym, z]: kAromatic) {
        if (text_.substr(pos_, sym.size()) == sym) {
          atom.element = z;
          atom.aromatic = true;
          pos_ += sym.size();
          found = true;
          break;
        }
      }
      if (!found)
        fail(ErrorCode::kUnknownElement, "unknown aromatic symbol");
    } else if (std::isupper(c)) {
      std::optional<int> z;
      if (pos_ + 1 < text_.size() && std::islower(text_[pos_ + 1]))
        z = element_from_symbol(text_.substr(pos_, 2));
      if (z) {
        pos_ += 2;
      } else {
        z = element_from_symbol(text_.substr(pos_, 1));
        if (!z)
          fail(ErrorCode::kUnknownElement, "unknown element symbol");
        ++pos_;
      }
      atom.element = *z;
    } else {
      fail(ErrorCode::kSmilesSyntax, "expected an element symbol");
    }

    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      atom.chirality = Chirality::kCounterClockwise;
      if (pos_ < text_.size() && text_[pos_] == '@') {
        ++pos_;
        atom.chirality = Chirality::kClockwise;
      } else if (pos_ < text_.size() && std::isupper(text_[pos_])
                 && text_[pos_] != 'H') {
        fail(ErrorCode::kUnsupportedFeature,
             "only tetrahedral @ and @@ are supported");
      }
    }

    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      atom.explicit_h = 1;
      if (pos_ < text_.size() && std::isdigit(text_[pos_])) {
        atom.explicit_h = 0;
        while (pos_ < text_.size() && std::isdigit(text_[pos_]))
          atom.explicit_h = atom.explicit_h * 10 + (text_[pos_++] - '0');
      }
    }

    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      const char sign = text_[pos_++];
      int magnitude = 1;
      if (pos_ < text_.size() && std::isdigit(text_[pos_])) {
        magnitude = 0;
        while (pos_ < text_.size() && std::isdigit(text_[pos_]))
          magnitude = magnitude * 10 + (text_[pos_++] - '0');
      } else {
        while (pos_ < text_.size() && text_[pos_] == sign) {
          ++magnitude;
          ++pos_;
        }
      }
      atom.formal_charge = sign == '+' ? magnitude : -magnitude;
    }

    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(text_[pos_]))
        fail(ErrorCode::kSmilesSyntax, "atom class needs a number");
      while (pos_ < text_.size() && std::isdigit(text_[pos_]))
        ++pos_;
    }

    if (pos_ >= text_.size() || text_[pos_] != ']')
      fail(ErrorCode::kSmilesSyntax, "expected ']'");
    ++pos_;
    add_atom(atom, start, true);
  }

  void read_organic_atom() {
    const std::size_t start = pos_;
    const char c = text_[pos_];
    Atom atom;
    std::size_t len = 1;
    switch (c) {
    case 'B':
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
        atom.element = 35;
        len = 2;
      } else {
        atom.element = 5;
      }
      break;
    case 'C':
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
        atom.element = 17;
        len = 2;
      } else {
        atom.element = 6;
      }
      break;
    case 'N':
      atom.element = 7;
      break;
    case 'O':
      atom.element = 8;
      break;
    case 'P':
      atom.element = 15;
      break;
    case 'S':
      atom.element = 16;
      break;
    case 'F':
      atom.element = 9;
      break;
    case 'I':
      atom.element = 53;
      break;
    case 'b':
      atom.element = 5;
      atom.aromatic = true;
      break;
    case 'c':
      atom.element = 6;
      atom.aromatic = true;
      break;
    case 'n':
      atom.element = 7;
      atom.aromatic = true;
      break;
    case 'o':
      atom.element = 8;
      atom.aromatic = true;
      break;
    case 'p':
      atom.element = 15;
      atom.aromatic = true;
      break;
    case 's':
      atom.element = 16;
      atom.aromatic = true;
      break;
    case '*':
      atom.element = 0;
      break;
    default:
      if (std::isalpha(static_cast<unsigned char>(c)))
        fail(ErrorCode::kUnknownElement,
             std::string("'") + c + "' outside brackets");
      fail(ErrorCode::kSmilesSyntax,
           std::string("unexpected character '") + c + "'");
    }
    pos_ += len;
    add_atom(atom, start, false);
  }

  void add_atom(const Atom &atom, std::size_t offset, bool bracket) {
    const int idx = mol_.num_atoms();
    mol_.atoms.push_back(atom);
    offsets_.push_back(offset);
    bracket_.push_back(bracket);
    written_.emplace_back();
    if (prev_ >= 0) {
      add_bond(prev_, idx, bond_);
      written_[prev_].push_back(idx);
      written_[idx].push_back(prev_);
    }
    if (bracket && atom.explicit_h > 0)
      written_[idx].push_back(kImplicitH);
    prev_ = idx;
    bond_ = {};
  }

  void add_bond(int begin, int end, const PendingBond &spec) {
    Bond bond;
    bond.begin = begin;
    bond.end = end;
    const bool both_aromatic =
        mol_.atoms[begin].aromatic && mol_.atoms[end].aromatic;
    if (spec.set) {
      bond.order = spec.order;
      bond.direction = spec.direction;
      if (bond.order == BondOrder::kAromatic && !both_aromatic)
        throw Error(ErrorCode::kSmilesSyntax,
                    "aromatic bond between non-aromatic atoms", spec.offset);
    } else {
      bond.order = both_aromatic ? BondOrder::kAromatic : BondOrder::kSingle;
      if (both_aromatic)
        implicit_aromatic_.push_back(mol_.num_bonds());
    }
    mol_.bonds.push_back(bond);
  }

  // An unmarked bond joining two aromatic atoms outside any ring, as
  // between the rings of biphenyl, is single.
  void demote_acyclic_aromatic_bonds() {
    if (implicit_aromatic_.empty())
      return;
    const RingInfo rings = ring_info(mol_);
    for (int b: implicit_aromatic_)
      if (!rings.bond_in_ring[b])
        mol_.bonds[b].order = BondOrder::kSingle;
  }

  void assign_implicit_hydrogens() {
    std::vector<int> valence(mol_.atoms.size(), 0);
    for (const Bond &b: mol_.bonds) {
      valence[b.begin] += bond_valence(b.order);
      valence[b.end] += bond_valence(b.order);
    }
    for (int i = 0; i < mol_.num_atoms(); ++i) {
      if (bracket_[i])
        continue;
      Atom &atom = mol_.atoms[i];
      const int h = default_implicit_h(atom, valence[i]);
      if (h < 0)
        throw Error(ErrorCode::kValenceError,
                    std::string("valence ") + std::to_string(valence[i])
                        + " too high for "
                        + std::string(element_symbol(atom.element)),
                    offsets_[i]);
      atom.explicit_h = h;
    }
  }

  void normalize_chirality() {
    const Adjacency adj = adjacency(mol_);
    for (int i = 0; i < mol_.num_atoms(); ++i) {
      Atom &atom = mol_.atoms[i];
      if (atom.chirality == Chirality::kNone)
        continue;
      const std::vector<int> ref = reference_order(atom, adj[i]);
      if (ref.size() != written_[i].size())
        continue;
      if (permutation_parity(written_[i], ref) != 0)
        atom.chirality = flip(atom.chirality);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  MoleculeGraph mol_;
  std::vector<std::size_t> offsets_;
  std::vector<bool> bracket_;
  // Neighbors in written order; kImplicitH marks a bracket hydrogen.
  std::vector<std::vector<int>> written_;
  std::vector<std::pair<int, std::size_t>> branches_;
  std::vector<int> implicit_aromatic_;
  std::array<RingOpen, 100> rings_ {};
  PendingBond bond_;
  int prev_ = -1;
};

}  // namespace

int default_implicit_h(const Atom &atom, int bond_valence_sum) {
  if (atom.element == 0)
    return 0;
  const auto valences = normal_valences(atom.element);
  if (valences.empty())
    return -1;
  for (int v: valences) {
    if (v >= bond_valence_sum) {
      const int h = atom.aromatic ? v - bond_valence_sum - 1
                                  : v - bond_valence_sum;
      return std::max(0, h);
    }
  }
  return -1;
}

MoleculeGraph parse_smiles(std::string_view text) {
  return SmilesParser(text).parse();
}

std::vector<int> canonical_ranks(const MoleculeGraph &mol) {
  const int n = mol.num_atoms();
  const Adjacency adj = adjacency(mol);
  std::vector<int> rank(n, 0);
  if (n == 0)
    return rank;

  using Key = std::pair<int, std::vector<int>>;
  std::vector<Key> keys(n);
  auto assign = [&]() -> int {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return keys[a] < keys[b]; });
    int classes = 0;
    for (int k = 0; k < n; ++k) {
      if (k > 0 && keys[idx[k]] != keys[idx[k - 1]])
        ++classes;
      rank[idx[k]] = classes;
    }
    return classes + 1;
  };

  for (int i = 0; i < n; ++i) {
    const Atom &a = mol.atoms[i];
    keys[i] = { 0,
                { a.element, a.formal_charge, static_cast<int>(adj[i].size()),
                  a.explicit_h, a.aromatic ? 1 : 0, a.isotope } };
  }
  int classes = assign();

  auto refine = [&]() {
    for (int round = 0; round < 2 * n && classes < n; ++round) {
      for (int i = 0; i < n; ++i) {
        std::vector<int> env;
        env.reserve(adj[i].size() * 2);
        std::vector<std::pair<int, int>> nbrs;
        for (const Neighbor &nb: adj[i])
          nbrs.emplace_back(static_cast<int>(mol.bonds[nb.bond].order),
                            rank[nb.atom]);
        std::sort(nbrs.begin(), nbrs.end());
        for (auto [o, r]: nbrs) {
          env.push_back(o);
          env.push_back(r);
        }
        keys[i] = { rank[i], std::move(env) };
      }
      const int next = assign();
      if (next == classes)
        break;
      classes = next;
    }
  };

  refine();
  while (classes < n) {
    std::vector<int> count(n, 0);
    for (int r: rank)
      ++count[r];
    int tied = 0;
    while (count[tied] < 2)
      ++tied;
    int chosen = -1;
    for (int i = 0; i < n && chosen < 0; ++i)
      if (rank[i] == tied)
        chosen = i;
    for (int i = 0; i < n; ++i)
      keys[i] = { rank[i], { i == chosen ? 0 : 1 } };
    classes = assign();
    refine();
  }
  return rank;
}

namespace {

class SmilesWriter {
public:
  explicit SmilesWriter(const MoleculeGraph &mol)
      : mol_(mol), adj_(adjacency(mol)), rank_(canonical_ranks(mol)) {
    for (auto &nbrs: adj_)
      std::sort(nbrs.begin(), nbrs.end(),
                [&](const Neighbor &a, const Neighbor &b) {
                  return rank_[a.atom] < rank_[b.atom];
                });
    valence_.assign(mol.atoms.size(), 0);
    for (const Bond &b: mol.bonds) {
      valence_[b.begin] += bond_valence(b.order);
      valence_[b.end] += bond_valence(b.order);
    }
    group_stereo_bonds();
  }

  std::string write() {
    const int n = mol_.num_atoms();
    visited_.assign(n, false);
    bond_done_.assign(mol_.bonds.size(), false);
    children_.assign(n, {});
    closures_.assign(n, {});

    std::vector<int> by_rank(n);
    std::iota(by_rank.begin(), by_rank.end(), 0);
    std::sort(by_rank.begin(), by_rank.end(),
              [&](int a, int b) { return rank_[a] < rank_[b]; });

    std::vector<int> roots;
    for (int a: by_rank) {
      if (!visited_[a]) {
        roots.push_back(a);
        discover(a, -1);
      }
    }
    for (auto &c: closures_)
      std::sort(c.begin(), c.end(), [&](const Neighbor &x, const Neighbor &y) {
        return rank_[x.atom] < rank_[y.atom];
      });

    digit_of_bond_.assign(mol_.bonds.size(), -1);
    written_.assign(n, false);
    for (std::size_t k = 0; k < roots.size(); ++k) {
      if (k > 0)
        out_ += '.';
      emit(roots[k], -1, -1);
    }
    return std::move(out_);
  }

private:
  void discover(int atom, int parent_bond) {
    visited_[atom] = true;
    for (const Neighbor &nb: adj_[atom]) {
      if (nb.bond == parent_bond || bond_done_[nb.bond])
        continue;
      bond_done_[nb.bond] = true;
      if (visited_[nb.atom]) {
        closures_[atom].push_back(nb);
        closures_[nb.atom].push_back({ atom, nb.bond });
      } else {
        children_[atom].push_back(nb);
        discover(nb.atom, nb.bond);
      }
    }
  }

  // Directional bonds around the same double bonds form one system. Flipping
  // every direction in a system describes the same geometry, so each system
  // is oriented to make its first written mark a '/'.
  void group_stereo_bonds() {
    const int m = mol_.num_bonds();
    system_.resize(m);
    std::iota(system_.begin(), system_.end(), 0);
    auto find = [&](int x) {
      while (system_[x] != x)
        x = system_[x] = system_[system_[x]];
      return x;
    };
    for (const Bond &b: mol_.bonds) {
      if (b.order != BondOrder::kDouble)
        continue;
      int first = -1;
      for (int end: { b.begin, b.end })
        for (const Neighbor &nb: adj_[end]) {
          if (mol_.bonds[nb.bond].direction == BondDirection::kNone)
            continue;
          if (first < 0)
            first = find(nb.bond);
          else
            system_[find(nb.bond)] = first;
        }
    }
    for (int e = 0; e < m; ++e)
      system_[e] = find(e);
    system_flip_.assign(m, -1);
  }

  std::string bond_symbol(int bond_idx, int from) {
    const Bond &b = mol_.bonds[bond_idx];
    const bool both_aromatic =
        mol_.atoms[b.begin].aromatic && mol_.atoms[b.end].aromatic;
    switch (b.order) {
    case BondOrder::kSingle: {
      BondDirection d = b.direction;
      if (from != b.begin)
        d = flip(d);
      if (d != BondDirection::kNone) {
        int &f = system_flip_[system_[bond_idx]];
        if (f < 0)
          f = d == BondDirection::kDown ? 1 : 0;
        if (f == 1)
          d = flip(d);
      }
      if (d == BondDirection::kUp)
        return "/";
      if (d == BondDirection::kDown)
        return "\\";
      return both_aromatic ? "-" : "";
    }
    case BondOrder::kDouble:
      return "=";
    case BondOrder::kTriple:
      return "#";
    case BondOrder::kAromatic:
      return both_aromatic ? "" : ":";
    }
    return "";
  }

  static std::string ring_label(int digit) {
    if (digit < 10)
      return std::string(1, static_cast<char>('0' + digit));
    return "%" + std::to_string(digit);
  }

  int allocate_digit() {
    for (int d = 1; d < 100; ++d) {
      if (!digit_used_[d]) {
        digit_used_[d] = true;
        return d;
      }
    }
    throw Error(ErrorCode::kUnsupportedFeature,
                "more than 99 simultaneously open rings");
  }

  void emit(int atom, int parent, int parent_bond) {
    if (parent >= 0)
      out_ += bond_symbol(parent_bond, parent);
    written_[atom] = true;

    std::vector<int> order;
    if (parent >= 0)
      order.push_back(parent);
    const Atom &a = mol_.atoms[atom];
    if (a.explicit_h > 0)
      order.push_back(kImplicitH);
    for (const Neighbor &c: closures_[atom])
      order.push_back(c.atom);
    for (const Neighbor &c: children_[atom])
      order.push_back(c.atom);

    Chirality chir = a.chirality;
    if (chir != Chirality::kNone) {
      std::vector<Neighbor> by_bond = adj_[atom];
      std::sort(by_bond.begin(), by_bond.end(),
                [](const Neighbor &x, const Neighbor &y) {
                  return x.bond < y.bond;
                });
      if (permutation_parity(reference_order(a, by_bond), order) != 0)
        chir = flip(chir);
    }
    out_ += atom_text(atom, chir);

    for (const Neighbor &c: closures_[atom]) {
      if (written_[c.atom]) {
        const int digit = digit_of_bond_[c.bond];
        digit_used_[digit] = false;
        out_ += ring_label(digit);
      } else {
        const int digit = allocate_digit();
        digit_of_bond_[c.bond] = digit;
        out_ += bond_symbol(c.bond, atom);
        out_ += ring_label(digit);
      }
    }

    const auto &kids = children_[atom];
    for (std::size_t k = 0; k < kids.size(); ++k) {
      const bool branch = k + 1 < kids.size();
      if (branch)
        out_ += '(';
      emit(kids[k].atom, atom, kids[k].bond);
      if (branch)
        out_ += ')';
    }
  }

  std::string atom_text(int atom, Chirality chir) const {
    const Atom &a = mol_.atoms[atom];
    std::string sym(element_symbol(a.element));
    const bool lower = a.aromatic && aromatic_capable(a.element);
    if (lower)
      sym[0] = static_cast<char>(std::tolower(sym[0]));

    bool bracket = a.formal_charge != 0 || a.isotope != 0
                   || chir != Chirality::kNone;
    if (!bracket) {
      if (a.element == 0) {
        bracket = a.explicit_h != 0;
      } else {
        const bool organic = !normal_valences(a.element).empty()
                             && (!a.aromatic || lower);
        bracket = !organic
                  || default_implicit_h(a, valence_[atom]) != a.explicit_h;
      }
    }
    if (!bracket)
      return sym;

    std::string text = "[";
    if (a.isotope != 0)
      text += std::to_string(a.isotope);
    text += sym;
    if (chir == Chirality::kCounterClockwise)
      text += "@";
    else if (chir == Chirality::kClockwise)
      text += "@@";
    if (a.explicit_h > 0) {
      text += 'H';
      if (a.explicit_h > 1)
        text += std::to_string(a.explicit_h);
    }
    if (a.formal_charge != 0) {
      text += a.formal_charge > 0 ? '+' : '-';
      const int mag = std::abs(a.formal_charge);
      if (mag > 1)
        text += std::to_string(mag);
    }
    text += ']';
    return text;
  }

  const MoleculeGraph &mol_;
  Adjacency adj_;
  std::vector<int> rank_;
  std::vector<int> valence_;
  std::vector<bool> visited_;
  std::vector<bool> bond_done_;
  std::vector<bool> written_;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<std::vector<Neighbor>> closures_;
  std::vector<int> digit_of_bond_;
  std::vector<int> system_;
  std::vector<int> system_flip_;
  std::array<bool, 100> digit_used_ {};
  std::string out_;
};

}  // namespace

std::string write_smiles(const MoleculeGraph &mol,
                         const SmilesWriteOptions &options) {
  if (!options.allow_wildcards) {
    for (const Atom &a: mol.atoms)
      if (a.element == 0)
        throw Error(ErrorCode::kUnsupportedFeature,
                    "attachment-point wildcard in output");
  }
  if (mol.empty())
    return "";
  return SmilesWriter(mol).write();
}

}  // namespace chemaug
