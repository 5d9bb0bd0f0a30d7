//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_CRYSTAL_STRUCTURE_H_
#define CHEMAUG_CRYSTAL_STRUCTURE_H_

#include <vector>

#include <Eigen/Dense>

namespace chemaug {

struct Site {
  int element = 0;
  Eigen::Vector3d frac = Eigen::Vector3d::Zero();

  bool operator==(const Site &o) const {
    return element == o.element && frac == o.frac;
  }
};

/// Periodic structure: lattice rows are the Cartesian basis vectors (in
/// Angstrom) and a site's Cartesian position is frac^T * lattice.
/// Every public operation returns fractional coordinates in [0, 1).
struct CrystalStructure {
  Eigen::Matrix3d lattice = Eigen::Matrix3d::Identity();
  std::vector<Site> sites;

  int num_sites() const noexcept { return static_cast<int>(sites.size()); }

  bool operator==(const CrystalStructure &o) const {
    return lattice == o.lattice && sites == o.sites;
  }
};

struct CellParameters {
  double a, b, c;              // Angstrom
  double alpha, beta, gamma;   // degrees
};

// a along x, b in the xy-plane.
Eigen::Matrix3d lattice_from_parameters(const CellParameters &p);
CellParameters parameters_from_lattice(const Eigen::Matrix3d &lattice);

// x - floor(x) per component, with results that round up to 1 mapped to 0.
double wrap_unit(double x) noexcept;
Eigen::Vector3d wrap_unit(const Eigen::Vector3d &frac) noexcept;

// Throws Error(kInvalidArgument) unless det(lattice) > 0, there is at least
// one site, and every fractional coordinate is in [0, 1).
void validate(const CrystalStructure &s);

}  // namespace chemaug

#endif  // CHEMAUG_CRYSTAL_STRUCTURE_H_
