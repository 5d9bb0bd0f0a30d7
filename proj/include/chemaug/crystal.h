//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_CRYSTAL_H_
#define CHEMAUG_CRYSTAL_H_

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "chemaug/crystal_structure.h"
#include "chemaug/rng.h"

namespace chemaug {

// frac^T * lattice; throws kIndexOutOfRange.
Eigen::Vector3d to_cartesian(const CrystalStructure &s, int site);
Eigen::Vector3d to_fractional(const CrystalStructure &s,
                              const Eigen::Vector3d &cart);

// Shortest periodic image of a fractional difference, in Cartesian space.
Eigen::Vector3d minimum_image(const CrystalStructure &s,
                              const Eigen::Vector3d &frac_delta);

/// Displaces every site by an independent random vector: direction uniform
/// on the sphere, magnitude uniform on [0, max_dist] (Angstrom).
CrystalStructure perturb(const CrystalStructure &s, RngState &rng,
                         double max_dist = 0.5);

struct RotationTrace {
  std::vector<Eigen::Vector3d> before;  // perturbed, unwrapped
  std::vector<Eigen::Vector3d> after;   // rotated, unwrapped
};

/// perturb() followed by one rigid rotation of all Cartesian positions about
/// their centroid; axis uniform on the sphere, angle uniform on [0, 2pi).
CrystalStructure rotate(const CrystalStructure &s, RngState &rng,
                        double max_dist = 0.5, RotationTrace *trace = nullptr);

enum class AxisPair { kXY = 0, kYZ = 1, kXZ = 2 };

CrystalStructure swap_axes(const CrystalStructure &s, AxisPair pair);
CrystalStructure swap_axes(const CrystalStructure &s, RngState &rng);

/// Moves exactly max(1, round(fraction * n)) distinct sites as in perturb().
/// `moved` receives the chosen indices in ascending order.
CrystalStructure translate_sites(const CrystalStructure &s, RngState &rng,
                                 double fraction = 0.25, double max_dist = 0.5,
                                 std::vector<int> *moved = nullptr);

// Throws kBadScale if any component is < 1.
CrystalStructure supercell(const CrystalStructure &s,
                           const std::array<int, 3> &scale = { 2, 2, 2 });

struct NeighborEdge {
  int i;
  int j;
  std::array<int, 3> image;
  double distance;  // Angstrom

  bool operator==(const NeighborEdge &) const = default;
};

// Calls fn(i, j, image, distance) for every periodic pair within cutoff,
// excluding i == j at the zero image. Pairs come grouped by i, then j, then
// image in lexicographic order.
void for_each_pair(
    const CrystalStructure &s, double cutoff,
    const std::function<void(int, int, const std::array<int, 3> &, double)>
        &fn);

/// Per site: every image of every site within cutoff, ordered by distance
/// (rounded to 1e-9 A) then (j, image), truncated to max_neighbors.
std::vector<NeighborEdge> neighbor_list(const CrystalStructure &s,
                                        double cutoff = 8.0,
                                        int max_neighbors = 12);

struct GaussianBasis {
  double start = 0.0;
  double stop = 8.0;
  double step = 0.2;
  double width = 0.2;

  int size() const noexcept;
  std::vector<double> expand(double distance) const;
};

struct CrystalGraph {
  std::vector<int> node_z;
  std::vector<NeighborEdge> edges;
  GaussianBasis gauss;
};

CrystalGraph build_crystal_graph(const CrystalStructure &s,
                                 double cutoff = 8.0, int max_neighbors = 12,
                                 double gaussian_step = 0.2,
                                 double gaussian_width = 0.2);

inline constexpr int kAgniSize = 32;

// eta_k = 0.8 * 20^(k/31), k = 0..31.
std::array<double, kAgniSize> agni_widths();

/// Site-averaged radial fingerprint with Gaussian widths agni_widths() and a
/// cosine cutoff.
std::array<double, kAgniSize> agni_fingerprint(const CrystalStructure &s,
                                               double cutoff = 8.0);

enum class CrystalStrategy {
  kPerturb,
  kRotate,
  kSwapAxes,
  kTranslate,
  kSupercell,
};

std::string_view to_string(CrystalStrategy strategy);
// Throws kUnknownStrategy.
CrystalStrategy parse_crystal_strategy(std::string_view name);
std::vector<CrystalStrategy> parse_crystal_strategies(std::string_view list);
std::vector<CrystalStrategy> default_crystal_strategies();

struct CrystalAugmentOptions {
  double max_dist = 0.5;
  double translate_fraction = 0.25;
  std::array<int, 3> supercell_scale = { 2, 2, 2 };
};

/// One augmented structure per strategy, each drawn from its own stream
/// seeded with derive_seed(seed, id, strategy name). Throws kUnknownStrategy
/// on an empty list.
std::vector<std::pair<CrystalStrategy, CrystalStructure>>
augment_crystal(const CrystalStructure &s, std::string_view id,
                const std::vector<CrystalStrategy> &strategies,
                std::uint64_t seed, const CrystalAugmentOptions &options = {});

}  // namespace chemaug

#endif  // CHEMAUG_CRYSTAL_H_
