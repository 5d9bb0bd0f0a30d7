//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include "chemaug/brics.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <optional>
#include <sstream>
#include <unordered_set>

#include "chemaug/error.h"
#include "chemaug/smiles.h"

namespace chemaug {

namespace {

constexpr std::string_view kDefaultRules =
#include "brics_rules.inc"
    ;

int link_number(std::string_view label) {
  int v = 0;
  std::size_t i = 0;
  for (; i < label.size() && std::isdigit(static_cast<unsigned char>(label[i]));
       ++i)
    v = v * 10 + (label[i] - '0');
  if (i == 0 || v < 1 || v > 16)
    throw Error(ErrorCode::kInvalidArgument,
                "bad BRICS label '" + std::string(label) + "'");
  return v;
}

}  // namespace

int BricsRules::find(std::string_view label) const {
  for (std::size_t i = 0; i < environments.size(); ++i)
    if (environments[i].label == label)
      return static_cast<int>(i);
  return -1;
}

BricsRules parse_brics_rules(std::string_view text) {
  BricsRules rules;
  std::istringstream in { std::string(text) };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind) || kind.starts_with('#'))
      continue;
    const std::string where = "BRICS rules line " + std::to_string(lineno);
    if (kind == "env") {
      std::string label, pattern;
      if (!(fields >> label >> pattern))
        throw Error(ErrorCode::kInvalidArgument, where + ": expected env");
      if (rules.find(label) >= 0)
        throw Error(ErrorCode::kInvalidArgument,
                    where + ": duplicate label " + label);
      rules.environments.push_back(
          { label, link_number(label), compile_pattern(pattern) });
    } else if (kind == "pair") {
      std::string a, b, bond;
      if (!(fields >> a >> b >> bond))
        throw Error(ErrorCode::kInvalidArgument, where + ": expected pair");
      const int ia = rules.find(a), ib = rules.find(b);
      if (ia < 0 || ib < 0)
        throw Error(ErrorCode::kInvalidArgument,
                    where + ": undefined label in pair");
      BondOrder order;
      if (bond == "-")
        order = BondOrder::kSingle;
      else if (bond == "=")
        order = BondOrder::kDouble;
      else
        throw Error(ErrorCode::kInvalidArgument, where + ": bad bond " + bond);
      rules.pairs.push_back({ ia, ib, order });
    } else {
      throw Error(ErrorCode::kInvalidArgument, where + ": unknown record");
    }
  }
  return rules;
}

std::string_view default_brics_rules_text() { return kDefaultRules; }

const BricsRules &default_brics_rules() {
  static const BricsRules rules = parse_brics_rules(kDefaultRules);
  return rules;
}

std::vector<BricsBond> brics_bonds(const MoleculeGraph &mol) {
  return brics_bonds(mol, default_brics_rules());
}

std::vector<BricsBond> brics_bonds(const MoleculeGraph &mol,
                                   const BricsRules &rules) {
  std::vector<BricsBond> out;
  if (mol.bonds.empty())
    return out;
  const MatchContext ctx(mol);
  const int n_env = static_cast<int>(rules.environments.size());
  // memo[atom * n_env + env]: 0 unknown, 1 no, 2 yes
  std::vector<std::uint8_t> memo(mol.atoms.size() * n_env, 0);
  auto env_at = [&](int env, int atom) {
    std::uint8_t &m = memo[atom * n_env + env];
    if (m == 0)
      m = match_pattern(rules.environments[env].pattern, ctx, atom) ? 2 : 1;
    return m == 2;
  };

  for (int b = 0; b < mol.num_bonds(); ++b) {
    const Bond &bond = mol.bonds[b];
    if (bond.order != BondOrder::kSingle || ctx.rings().bond_in_ring[b])
      continue;
    for (const BricsPair &p: rules.pairs) {
      if (p.order != bond.order)
        continue;
      std::optional<std::array<int, 2>> envs;
      if (env_at(p.first, bond.begin) && env_at(p.second, bond.end))
        envs = std::array<int, 2> { p.first, p.second };
      else if (env_at(p.second, bond.begin) && env_at(p.first, bond.end))
        envs = std::array<int, 2> { p.second, p.first };
      if (envs) {
        out.push_back({ b,
                        { rules.environments[(*envs)[0]].link,
                          rules.environments[(*envs)[1]].link },
                        *envs });
        break;
      }
    }
  }
  return out;
}

std::pair<CleavedPart, CleavedPart> cleave_bond(const MoleculeGraph &mol,
                                                int bond, int link_begin,
                                                int link_end) {
  if (bond < 0 || bond >= mol.num_bonds())
    throw Error(ErrorCode::kIndexOutOfRange,
                "bond " + std::to_string(bond) + " of "
                    + std::to_string(mol.num_bonds()));
  const Bond cut = mol.bonds[bond];
  const int n = mol.num_atoms();

  MoleculeGraph work = mol;
  Atom star;
  star.element = 0;
  star.isotope = link_begin;
  work.atoms.push_back(star);  // n: replaces `end` on the begin side
  star.isotope = link_end;
  work.atoms.push_back(star);  // n + 1: replaces `begin` on the end side

  // The begin-side bond keeps the index of the cut bond and the end-side
  // bond is inserted right after it, so each atom keeps its neighbor order.
  Bond first = cut, second = cut;
  first.end = n;
  first.order = BondOrder::kSingle;
  second.begin = n + 1;
  second.order = BondOrder::kSingle;
  work.bonds[bond] = first;
  work.bonds.insert(work.bonds.begin() + bond + 1, second);

  const Adjacency adj = adjacency(work);
  const std::vector<int> comp = connected_components(work, adj, nullptr);
  if (comp[cut.begin] == comp[cut.end])
    throw Error(ErrorCode::kInvalidArgument,
                "bond " + std::to_string(bond) + " is in a ring");

  auto side = [&](int anchor) {
    std::vector<int> keep;
    for (int a = 0; a < work.num_atoms(); ++a)
      if (comp[a] == comp[anchor])
        keep.push_back(a);
    CleavedPart part;
    part.mol = induced_subgraph(work, keep);
    part.origin.reserve(keep.size());
    for (int a: keep)
      part.origin.push_back(a < n ? a : -1);
    return part;
  };
  return { side(cut.begin), side(cut.end) };
}

FragmentTree brics_fragments(const MoleculeGraph &mol, int max_depth) {
  return brics_fragments(mol, max_depth, default_brics_rules());
}

FragmentTree brics_fragments(const MoleculeGraph &mol, int max_depth,
                             const BricsRules &rules) {
  if (max_depth < 1)
    throw Error(ErrorCode::kInvalidArgument, "max_depth must be >= 1");
  FragmentTree tree;
  FragmentNode root;
  root.mol = mol;
  root.origin.resize(mol.atoms.size());
  for (int a = 0; a < mol.num_atoms(); ++a) {
    root.origin[a] = mol.atoms[a].element == 0 ? -1 : a;
    if (mol.atoms[a].element == 0)
      root.attachments.emplace_back(a, mol.atoms[a].isotope);
  }
  root.smiles = write_smiles(mol);
  tree.nodes.push_back(std::move(root));

  std::unordered_set<std::string> seen { tree.nodes[0].smiles };
  std::deque<int> queue { 0 };
  while (!queue.empty()) {
    const int idx = queue.front();
    queue.pop_front();
    if (tree.nodes[idx].depth >= max_depth)
      continue;
    const std::vector<BricsBond> cuts = brics_bonds(tree.nodes[idx].mol, rules);
    for (const BricsBond &cut: cuts) {
      auto parts = cleave_bond(tree.nodes[idx].mol, cut.bond, cut.links[0],
                               cut.links[1]);
      for (CleavedPart *part: { &parts.first, &parts.second }) {
        std::string smiles = write_smiles(part->mol);
        if (!seen.insert(smiles).second)
          continue;
        const FragmentNode &parent = tree.nodes[idx];
        FragmentNode node;
        node.origin.reserve(part->origin.size());
        for (std::size_t a = 0; a < part->origin.size(); ++a) {
          const int o = part->origin[a];
          node.origin.push_back(o < 0 ? -1 : parent.origin[o]);
          if (part->mol.atoms[a].element == 0)
            node.attachments.emplace_back(static_cast<int>(a),
                                          part->mol.atoms[a].isotope);
        }
        node.mol = std::move(part->mol);
        node.depth = parent.depth + 1;
        node.parent = idx;
        node.smiles = std::move(smiles);
        tree.nodes.push_back(std::move(node));
        queue.push_back(static_cast<int>(tree.nodes.size()) - 1);
      }
    }
  }
  return tree;
}

}  // namespace chemaug
