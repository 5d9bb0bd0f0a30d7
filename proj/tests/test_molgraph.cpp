//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <set>

#include "chemaug/brics.h"
#include "chemaug/error.h"
#include "chemaug/molgraph.h"
#include "chemaug/pattern.h"
#include "test_support.h"

using namespace chemaug;
using namespace chemaug::testing;

namespace {

// "a-b:la,lb" items with a < b, sorted.
std::string bond_list(const MoleculeGraph &m) {
  std::vector<std::array<int, 4>> items;
  for (const BricsBond &b: brics_bonds(m)) {
    const Bond &bond = m.bonds[b.bond];
    std::array<int, 4> it { bond.begin, bond.end, b.links[0], b.links[1] };
    if (it[0] > it[1])
      it = { it[1], it[0], it[3], it[2] };
    items.push_back(it);
  }
  std::sort(items.begin(), items.end());
  std::string out;
  for (const auto &it: items) {
    if (!out.empty())
      out += ';';
    out += std::to_string(it[0]) + "-" + std::to_string(it[1]) + ":"
           + std::to_string(it[2]) + "," + std::to_string(it[3]);
  }
  return out;
}

MolGraphRecord record(std::string_view smiles) {
  MolGraphRecord r = build_graph_record(parse_smiles(smiles), {});
  r.id = "m";
  return r;
}

}  // namespace

TEST(BricsRules, TableShape) {
  const BricsRules &rules = default_brics_rules();
  EXPECT_EQ(rules.environments.size(), 16U);  // no 2; 7 split in two
  EXPECT_EQ(rules.pairs.size(), 46U);
  EXPECT_GE(rules.find("7a"), 0);
  EXPECT_EQ(rules.find("2"), -1);
  EXPECT_EQ(rules.environments[rules.find("7b")].link, 7);
  const BricsRules again = parse_brics_rules(default_brics_rules_text());
  EXPECT_EQ(again.pairs.size(), rules.pairs.size());
  EXPECT_THROW(parse_brics_rules("pair 1 99 -\n"), Error);
}

// Reference lists from an independent implementation, frozen.
TEST(Brics, ReferenceBondLists) {
  const auto rows = read_tsv(data_dir() / "oracle_brics.tsv");
  ASSERT_EQ(rows.size(), 10U);
  for (const auto &r: rows) {
    SCOPED_TRACE(r[0]);
    EXPECT_EQ(bond_list(parse_smiles(r[0])), r.size() > 1 ? r[1] : "");
  }
}

TEST(Brics, HandCheckedCases) {
  EXPECT_EQ(bond_list(parse_smiles("CCOC(C)=O")), "1-2:4,3;2-3:3,1");
  EXPECT_EQ(bond_list(parse_smiles("c1ccccc1")), "");
  EXPECT_EQ(bond_list(parse_smiles("C")), "");
}

TEST(Brics, BondsAreSoundOnCorpus) {
  const BricsRules &rules = default_brics_rules();
  for (const std::string &smi: corpus_smiles()) {
    SCOPED_TRACE(smi);
    const MoleculeGraph m = parse_smiles(smi);
    const RingInfo rings = ring_info(m);
    for (const BricsBond &b: brics_bonds(m)) {
      const Bond &bond = m.bonds[b.bond];
      EXPECT_EQ(bond.order, BondOrder::kSingle);
      EXPECT_FALSE(rings.bond_in_ring[b.bond]);
      EXPECT_TRUE(match_pattern(rules.environments[b.envs[0]].pattern, m,
                                bond.begin));
      EXPECT_TRUE(match_pattern(rules.environments[b.envs[1]].pattern, m,
                                bond.end));
      EXPECT_EQ(rules.environments[b.envs[0]].link, b.links[0]);
    }
  }
}

TEST(Brics, SingleCutsPartitionTheParent) {
  for (const std::string &smi: corpus_smiles()) {
    SCOPED_TRACE(smi);
    const MoleculeGraph m = parse_smiles(smi);
    for (const BricsBond &b: brics_bonds(m)) {
      const auto [left, right] = cleave_bond(m, b.bond, b.links[0], b.links[1]);
      std::vector<int> seen(m.num_atoms(), 0);
      int wildcards = 0;
      for (const CleavedPart *part: { &left, &right }) {
        EXPECT_EQ(part->mol.num_atoms(), static_cast<int>(part->origin.size()));
        for (std::size_t k = 0; k < part->origin.size(); ++k) {
          if (part->origin[k] < 0) {
            ++wildcards;
            EXPECT_EQ(part->mol.atoms[k].element, 0);
          } else {
            ++seen[part->origin[k]];
          }
        }
      }
      EXPECT_EQ(wildcards, 2);
      for (int c: seen)
        EXPECT_EQ(c, 1);
    }
  }
}

TEST(Brics, CleaveKeepsChirality) {
  const MoleculeGraph m = parse_smiles("C[C@H](N)C(=O)OCC");
  const auto bonds = brics_bonds(m);
  ASSERT_FALSE(bonds.empty());
  for (const BricsBond &b: bonds) {
    const auto [left, right] = cleave_bond(m, b.bond, b.links[0], b.links[1]);
    for (const CleavedPart *part: { &left, &right })
      for (std::size_t k = 0; k < part->origin.size(); ++k)
        if (part->origin[k] == 1) {
          // the stereocentre survives the cut with an unchanged parity
          EXPECT_EQ(write_smiles(part->mol).find('@') != std::string::npos,
                    true);
        }
  }
  EXPECT_THROW(cleave_bond(parse_smiles("C1CC1"), 0, 1, 1), Error);
}

TEST(Brics, FragmentTreeOfEthylAcetate) {
  const FragmentTree tree = brics_fragments(parse_smiles("CCOC(C)=O"), 2);
  std::set<std::string> got;
  for (int i = 1; i < static_cast<int>(tree.nodes.size()); ++i)
    got.insert(tree.nodes[i].smiles);
  const std::set<std::string> want { write_smiles(parse_smiles("[4*]CC")),
                                     write_smiles(parse_smiles("[3*]OC(C)=O")),
                                     write_smiles(parse_smiles("[3*]OCC")),
                                     write_smiles(parse_smiles("[1*]C(C)=O")),
                                     write_smiles(parse_smiles("[3*]O[3*]")) };
  EXPECT_EQ(got, want);
  EXPECT_EQ(tree.nodes[0].depth, 0);
  for (int i = 1; i < static_cast<int>(tree.nodes.size()); ++i) {
    EXPECT_GE(tree.nodes[i].depth, 1);
    EXPECT_LE(tree.nodes[i].depth, 2);
    EXPECT_GE(tree.nodes[i].parent, 0);
    EXPECT_LT(tree.nodes[i].parent, i);
  }
  EXPECT_EQ(brics_fragments(parse_smiles("c1ccccc1")).num_fragments(), 0);
  EXPECT_THROW(brics_fragments(parse_smiles("CC"), 0), Error);
}

TEST(Brics, ChildrenAreSubsetsOfParents) {
  for (const std::string &smi: corpus_smiles()) {
    SCOPED_TRACE(smi);
    const FragmentTree tree = brics_fragments(parse_smiles(smi), 3);
    std::set<std::string> unique;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
      const FragmentNode &node = tree.nodes[i];
      EXPECT_TRUE(unique.insert(node.smiles).second);
      if (i == 0)
        continue;
      std::set<int> mine, parent;
      for (int o: node.origin)
        if (o >= 0)
          mine.insert(o);
      for (int o: tree.nodes[node.parent].origin)
        if (o >= 0)
          parent.insert(o);
      EXPECT_TRUE(std::includes(parent.begin(), parent.end(), mine.begin(),
                                mine.end()));
      EXPECT_LT(mine.size(), parent.size());
    }
  }
}

TEST(Scaffold, Examples) {
  EXPECT_EQ(scaffold_key(parse_smiles("Cc1ccccc1")),
            write_smiles(parse_smiles("c1ccccc1")));
  EXPECT_EQ(scaffold_key(parse_smiles("CCCCCC")), "");
  EXPECT_EQ(scaffold_key(parse_smiles("c1ccccc1CCc1ccncc1")),
            write_smiles(parse_smiles("c1ccccc1CCc1ccncc1")));
  EXPECT_EQ(scaffold_key(parse_smiles("CC(C)Cc1ccc(C(C)C(=O)O)cc1")),
            write_smiles(parse_smiles("c1ccccc1")));
}

// Reference scaffolds from an independent stripping pass, frozen.
TEST(Scaffold, MatchesReferenceOnCorpus) {
  for (const auto &r: read_tsv(data_dir() / "oracle_scaffolds.tsv")) {
    SCOPED_TRACE(r[0]);
    const MoleculeGraph scaffold = murcko_scaffold(parse_smiles(r[0]));
    if (r.size() < 2 || r[1].empty()) {
      EXPECT_TRUE(scaffold.empty());
      continue;
    }
    EXPECT_EQ(write_smiles(scaffold), write_smiles(parse_smiles(r[1])));
  }
}

TEST(GraphAugment, MaskAtoms) {
  RngState rng(1);
  for (const std::string &smi: corpus_smiles()) {
    const MolGraphRecord rec = record(smi);
    const MolGraphRecord out = mask_atoms(rec, 0.1, rng);
    const int n = static_cast<int>(rec.nodes.size());
    const int k = std::min<int>(n, std::max<long>(1, std::lround(0.1 * n)));
    int masked = 0;
    for (std::size_t i = 0; i < rec.nodes.size(); ++i) {
      if (out.nodes[i].masked) {
        ++masked;
        EXPECT_EQ(out.nodes[i].atom_type, kMaskAtomType);
      } else {
        EXPECT_EQ(out.nodes[i], rec.nodes[i]);
      }
    }
    EXPECT_EQ(masked, k);
    EXPECT_EQ(out.edges, rec.edges);
    EXPECT_EQ(out.provenance, Provenance::kAtomMask);
  }
  const MolGraphRecord rec = record("CCO");
  EXPECT_EQ(mask_atoms(rec, 0.0, rng).nodes, rec.nodes);
  EXPECT_THROW(mask_atoms(rec, 1.5, rng), Error);
}

TEST(GraphAugment, DeleteBondsKeepsOrder) {
  RngState rng(2);
  for (const std::string &smi: corpus_smiles()) {
    const MolGraphRecord rec = record(smi);
    const MolGraphRecord out = delete_bonds(rec, 0.1, rng);
    const int m = static_cast<int>(rec.edges.size());
    EXPECT_EQ(static_cast<int>(out.edges.size()), m - std::lround(0.1 * m));
    EXPECT_EQ(out.nodes, rec.nodes);
    std::size_t pos = 0;
    for (const GraphEdge &e: out.edges) {
      while (pos < rec.edges.size() && !(rec.edges[pos] == e))
        ++pos;
      ASSERT_LT(pos, rec.edges.size());
      ++pos;
    }
  }
}

TEST(GraphAugment, RemoveSubstructurePicksAFragment) {
  const MoleculeGraph m = parse_smiles("CC(=O)Nc1ccccc1");
  const FragmentTree tree = brics_fragments(m);
  MolGraphRecord rec = build_graph_record(m, {});
  rec.id = "acetanilide";
  std::set<std::size_t> sizes;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngState rng(seed);
    const MolGraphRecord out = remove_substructure(rec, tree, rng);
    EXPECT_EQ(out.provenance, Provenance::kSubstructure);
    EXPECT_EQ(out.parent_id, "acetanilide");
    EXPECT_LT(out.nodes.size(), rec.nodes.size() + 2);
    sizes.insert(out.nodes.size());
  }
  EXPECT_GT(sizes.size(), 1U);
  EXPECT_EQ(all_substructures(rec, tree).size(),
            static_cast<std::size_t>(tree.num_fragments()));
  RngState rng(0);
  const MolGraphRecord benzene = record("c1ccccc1");
  EXPECT_EQ(remove_substructure(benzene, brics_fragments(parse_smiles("c1ccccc1")),
                                rng),
            benzene);
}

TEST(Labels, MaskMissingValues) {
  const std::vector<std::optional<double>> raw { 1.5, std::nullopt, 0.0 };
  const LabelVector v = mask_labels(raw);
  EXPECT_EQ(v.values, (std::vector<double> { 1.5, 0.0, 0.0 }));
  EXPECT_EQ(v.mask, (std::vector<std::uint8_t> { 1, 0, 1 }));
}
