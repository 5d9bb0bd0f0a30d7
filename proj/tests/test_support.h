//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_TESTS_TEST_SUPPORT_H_
#define CHEMAUG_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "chemaug/crystal.h"
#include "chemaug/crystal_structure.h"
#include "chemaug/rng.h"
#include "chemaug/smiles.h"

namespace chemaug::testing {

inline std::filesystem::path data_dir() { return CHEMAUG_TEST_DATA_DIR; }

inline std::string read_file(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> split_tabs(const std::string &line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    out.push_back(line.substr(pos, tab - pos));
    if (tab == std::string::npos)
      return out;
    pos = tab + 1;
  }
}

// Non-comment rows of a tab-separated oracle file.
inline std::vector<std::vector<std::string>>
read_tsv(const std::filesystem::path &p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#')
      rows.push_back(split_tabs(line));
  return rows;
}

inline std::vector<std::string> corpus_smiles() {
  std::vector<std::string> out;
  std::ifstream in(data_dir() / "corpus.smi");
  std::string line;
  while (std::getline(in, line))
    if (!line.empty())
      out.push_back(line);
  return out;
}

inline CrystalStructure rock_salt(double a = 5.64) {
  CrystalStructure s;
  s.lattice = lattice_from_parameters({ a, a, a, 90, 90, 90 });
  const double na[4][3] = { { 0, 0, 0 }, { 0, .5, .5 }, { .5, 0, .5 },
                            { .5, .5, 0 } };
  const double cl[4][3] = { { .5, 0, 0 }, { 0, .5, 0 }, { 0, 0, .5 },
                            { .5, .5, .5 } };
  for (auto &p: na)
    s.sites.push_back({ 11, { p[0], p[1], p[2] } });
  for (auto &p: cl)
    s.sites.push_back({ 17, { p[0], p[1], p[2] } });
  return s;
}

// Random valid cell with 1..max_sites sites of mixed elements.
inline CrystalStructure random_structure(RngState &rng, int max_sites) {
  CrystalStructure s;
  while (true) {
    CellParameters p { 3 + 4 * rng.uniform(), 3 + 4 * rng.uniform(),
                       3 + 4 * rng.uniform(), 70 + 40 * rng.uniform(),
                       70 + 40 * rng.uniform(), 70 + 40 * rng.uniform() };
    try {
      s.lattice = lattice_from_parameters(p);
      break;
    } catch (...) {
    }
  }
  const int n = 1 + static_cast<int>(rng.below(max_sites));
  for (int i = 0; i < n; ++i)
    s.sites.push_back({ 1 + static_cast<int>(rng.below(83)),
                        { rng.uniform(), rng.uniform(), rng.uniform() } });
  return s;
}

// Brute-force scan of periodic images within +-reach cells.
inline std::vector<NeighborEdge> brute_neighbors(const CrystalStructure &s,
                                                 double cutoff,
                                                 int reach = 3) {
  std::vector<NeighborEdge> out;
  const int n = s.num_sites();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int x = -reach; x <= reach; ++x)
        for (int y = -reach; y <= reach; ++y)
          for (int z = -reach; z <= reach; ++z) {
            if (i == j && x == 0 && y == 0 && z == 0)
              continue;
            Eigen::Vector3d df = s.sites[j].frac - s.sites[i].frac;
            df += Eigen::Vector3d(x, y, z);
            const double d = (s.lattice.transpose() * df).norm();
            if (d <= cutoff)
              out.push_back({ i, j, { x, y, z }, d });
          }
  return out;
}

inline auto edge_key(const NeighborEdge &e) {
  return std::make_tuple(e.i, e.j, e.image[0], e.image[1], e.image[2]);
}

inline std::vector<int> element_counts(const CrystalStructure &s) {
  std::vector<int> c(120, 0);
  for (const Site &site: s.sites)
    ++c[site.element];
  return c;
}

// Drug-like table whose scaffold groups have a long-tailed size profile.
inline std::string synthetic_csv(int rows, std::uint64_t seed) {
  static const char *const kRings[] = {
    "c1ccccc1", "c1ccncc1", "C1CCCCC1", "c1ccoc1", "c1ccsc1",
    "C1CCNCC1", "c1cncnc1", "C1CCOC1", "c1ccc2ccccc2c1", "C1CC1",
  };
  static const char *const kLinkers[] = { "", "C", "CC", "O", "N", "C(=O)N",
                                          "S(=O)(=O)" };
  static const char *const kTails[] = { "", "C", "CC", "OC", "N", "F", "Cl",
                                        "C(=O)O", "C#N", "CCO", "OCC" };
  RngState rng(seed);
  std::string csv = "id,smiles,y\n";
  for (int r = 0; r < rows; ++r) {
    // squared uniform skews choices toward the front of each list
    auto pick = [&](int n) {
      const double u = rng.uniform();
      return static_cast<int>(u * u * n);
    };
    std::string smi;
    if (rng.below(20) == 0) {
      smi = std::string("CC") + kTails[rng.below(11)];  // acyclic
    } else {
      const std::string a = kRings[pick(10)];
      smi = a;
      if (rng.below(3) != 0) {
        // second ring with digit 2 so both closures stay distinct
        std::string b = kRings[pick(10)];
        for (char &c: b)
          if (c == '1')
            c = '3';
          else if (c == '2')
            c = '4';
        smi += kLinkers[pick(7)] + b;
      }
      smi = std::string(kTails[rng.below(11)]) + smi;
    }
    csv += "r" + std::to_string(r) + "," + smi + ","
           + std::to_string(rng.below(2)) + "\n";
  }
  return csv;
}

}  // namespace chemaug::testing

#endif  // CHEMAUG_TESTS_TEST_SUPPORT_H_
