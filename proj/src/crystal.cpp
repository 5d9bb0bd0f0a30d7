//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#include "chemaug/crystal.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <tuple>

#include "chemaug/error.h"

namespace chemaug {

Eigen::Vector3d to_cartesian(const CrystalStructure &s, int site) {
  if (site < 0 || site >= s.num_sites())
    throw Error(ErrorCode::kIndexOutOfRange,
                "site " + std::to_string(site) + " of "
                    + std::to_string(s.num_sites()));
  return s.lattice.transpose() * s.sites[site].frac;
}

Eigen::Vector3d to_fractional(const CrystalStructure &s,
                              const Eigen::Vector3d &cart) {
  // cart^T = frac^T L  =>  L^T frac = cart
  return s.lattice.transpose().partialPivLu().solve(cart);
}

Eigen::Vector3d minimum_image(const CrystalStructure &s,
                              const Eigen::Vector3d &frac_delta) {
  Eigen::Vector3d base = frac_delta;
  for (int k = 0; k < 3; ++k)
    base[k] -= std::round(base[k]);
  Eigen::Vector3d best = s.lattice.transpose() * base;
  double best_sq = best.squaredNorm();
  for (int a = -1; a <= 1; ++a)
    for (int b = -1; b <= 1; ++b)
      for (int c = -1; c <= 1; ++c) {
        const Eigen::Vector3d v =
            s.lattice.transpose() * (base + Eigen::Vector3d(a, b, c));
        if (v.squaredNorm() < best_sq) {
          best_sq = v.squaredNorm();
          best = v;
        }
      }
  return best;
}

// ---- transforms ----

namespace {

Eigen::Vector3d random_displacement(RngState &rng, double max_dist) {
  const Eigen::Vector3d dir = rng.unit_vector();
  const double magnitude = max_dist * rng.uniform();
  return magnitude * dir;
}

void check_max_dist(double max_dist) {
  if (!(max_dist >= 0.0))
    throw Error(ErrorCode::kInvalidArgument, "max_dist must be >= 0");
}

}  // namespace

CrystalStructure perturb(const CrystalStructure &s, RngState &rng,
                         double max_dist) {
  check_max_dist(max_dist);
  const Eigen::Matrix3d inv_t = s.lattice.transpose().inverse();
  CrystalStructure out = s;
  for (Site &site: out.sites) {
    const Eigen::Vector3d d = random_displacement(rng, max_dist);
    site.frac = wrap_unit(Eigen::Vector3d(site.frac + inv_t * d));
  }
  return out;
}

CrystalStructure rotate(const CrystalStructure &s, RngState &rng,
                        double max_dist, RotationTrace *trace) {
  check_max_dist(max_dist);
  const int n = s.num_sites();
  std::vector<Eigen::Vector3d> pos(n);
  for (int i = 0; i < n; ++i)
    pos[i] = to_cartesian(s, i) + random_displacement(rng, max_dist);

  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto &p: pos)
    centroid += p;
  if (n > 0)
    centroid /= n;

  const Eigen::Vector3d axis = rng.unit_vector();
  const double angle = 2.0 * std::numbers::pi * rng.uniform();
  const Eigen::Matrix3d rot = Eigen::AngleAxisd(angle, axis).toRotationMatrix();

  if (trace != nullptr) {
    trace->before = pos;
    trace->after.clear();
  }
  const Eigen::Matrix3d inv_t = s.lattice.transpose().inverse();
  CrystalStructure out = s;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector3d r = centroid + rot * (pos[i] - centroid);
    if (trace != nullptr)
      trace->after.push_back(r);
    out.sites[i].frac = wrap_unit(Eigen::Vector3d(inv_t * r));
  }
  return out;
}

CrystalStructure swap_axes(const CrystalStructure &s, AxisPair pair) {
  static constexpr int kAxes[3][2] = { { 0, 1 }, { 1, 2 }, { 0, 2 } };
  const auto [a, b] = kAxes[static_cast<int>(pair)];
  CrystalStructure out = s;
  for (Site &site: out.sites)
    std::swap(site.frac[a], site.frac[b]);
  return out;
}

CrystalStructure swap_axes(const CrystalStructure &s, RngState &rng) {
  return swap_axes(s, static_cast<AxisPair>(rng.below(3)));
}

CrystalStructure translate_sites(const CrystalStructure &s, RngState &rng,
                                 double fraction, double max_dist,
                                 std::vector<int> *moved) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw Error(ErrorCode::kInvalidArgument, "fraction must be in (0, 1]");
  check_max_dist(max_dist);
  const int n = s.num_sites();
  const int k = std::min<int>(
      n, std::max<long>(1, std::lround(fraction * n)));

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int t = 0; t < k; ++t) {
    const int j = t + static_cast<int>(rng.below(n - t));
    std::swap(order[t], order[j]);
  }
  std::vector<int> chosen(order.begin(), order.begin() + k);
  std::sort(chosen.begin(), chosen.end());

  const Eigen::Matrix3d inv_t = s.lattice.transpose().inverse();
  CrystalStructure out = s;
  for (int i: chosen) {
    const Eigen::Vector3d d = random_displacement(rng, max_dist);
    out.sites[i].frac = wrap_unit(Eigen::Vector3d(out.sites[i].frac + inv_t * d));
  }
  if (moved != nullptr)
    *moved = std::move(chosen);
  return out;
}

CrystalStructure supercell(const CrystalStructure &s,
                           const std::array<int, 3> &scale) {
  for (int k = 0; k < 3; ++k)
    if (scale[k] < 1)
      throw Error(ErrorCode::kBadScale,
                  "scale component " + std::to_string(scale[k]) + " < 1");
  CrystalStructure out;
  out.lattice = s.lattice;
  for (int k = 0; k < 3; ++k)
    out.lattice.row(k) *= scale[k];
  out.sites.reserve(s.sites.size() * scale[0] * scale[1] * scale[2]);
  const Eigen::Vector3d sc(scale[0], scale[1], scale[2]);
  for (const Site &site: s.sites)
    for (int a = 0; a < scale[0]; ++a)
      for (int b = 0; b < scale[1]; ++b)
        for (int c = 0; c < scale[2]; ++c) {
          const Eigen::Vector3d f =
              (site.frac + Eigen::Vector3d(a, b, c)).cwiseQuotient(sc);
          out.sites.push_back({ site.element, wrap_unit(f) });
        }
  return out;
}

// ---- neighbors ----

void for_each_pair(
    const CrystalStructure &s, double cutoff,
    const std::function<void(int, int, const std::array<int, 3> &, double)>
        &fn) {
  const int n = s.num_sites();
  const Eigen::Matrix3d lt = s.lattice.transpose();
  // |frac_k| <= |r| * |column k of lattice^-1|
  const Eigen::Matrix3d inv = s.lattice.inverse();
  Eigen::Vector3d reach;
  for (int k = 0; k < 3; ++k)
    reach[k] = cutoff * inv.col(k).norm();
  const double cutoff_sq = cutoff * cutoff;

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Eigen::Vector3d df = s.sites[j].frac - s.sites[i].frac;
      int lo[3], hi[3];
      for (int k = 0; k < 3; ++k) {
        lo[k] = static_cast<int>(std::ceil(-reach[k] - df[k]));
        hi[k] = static_cast<int>(std::floor(reach[k] - df[k]));
      }
      for (int a = lo[0]; a <= hi[0]; ++a)
        for (int b = lo[1]; b <= hi[1]; ++b)
          for (int c = lo[2]; c <= hi[2]; ++c) {
            if (i == j && a == 0 && b == 0 && c == 0)
              continue;
            const Eigen::Vector3d r = lt * (df + Eigen::Vector3d(a, b, c));
            const double d_sq = r.squaredNorm();
            if (d_sq > cutoff_sq)
              continue;
            const double d = std::sqrt(d_sq);
            if (d > cutoff)
              continue;
            fn(i, j, { a, b, c }, d);
          }
    }
  }
}

std::vector<NeighborEdge> neighbor_list(const CrystalStructure &s,
                                        double cutoff, int max_neighbors) {
  if (!(cutoff > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "cutoff must be > 0");
  if (max_neighbors < 1)
    throw Error(ErrorCode::kInvalidArgument, "max_neighbors must be >= 1");

  std::vector<std::vector<NeighborEdge>> per_site(s.sites.size());
  for_each_pair(s, cutoff,
                [&](int i, int j, const std::array<int, 3> &img, double d) {
                  per_site[i].push_back({ i, j, img, d });
                });

  std::vector<NeighborEdge> out;
  for (auto &list: per_site) {
    std::sort(list.begin(), list.end(),
              [](const NeighborEdge &x, const NeighborEdge &y) {
                return std::make_tuple(std::llround(x.distance * 1e9), x.j,
                                       x.image)
                       < std::make_tuple(std::llround(y.distance * 1e9), y.j,
                                         y.image);
              });
    if (static_cast<int>(list.size()) > max_neighbors)
      list.resize(max_neighbors);
    out.insert(out.end(), list.begin(), list.end());
  }
  return out;
}

int GaussianBasis::size() const noexcept {
  return static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
}

std::vector<double> GaussianBasis::expand(double distance) const {
  const int n = size();
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) {
    const double mu = start + k * step;
    const double x = (distance - mu) / width;
    out[k] = std::exp(-x * x);
  }
  return out;
}

CrystalGraph build_crystal_graph(const CrystalStructure &s, double cutoff,
                                 int max_neighbors, double gaussian_step,
                                 double gaussian_width) {
  if (!(gaussian_step > 0.0 && gaussian_width > 0.0))
    throw Error(ErrorCode::kInvalidArgument,
                "gaussian step and width must be > 0");
  CrystalGraph g;
  g.node_z.reserve(s.sites.size());
  for (const Site &site: s.sites)
    g.node_z.push_back(site.element);
  g.edges = neighbor_list(s, cutoff, max_neighbors);
  g.gauss = { 0.0, cutoff, gaussian_step, gaussian_width };
  return g;
}

std::array<double, kAgniSize> agni_widths() {
  std::array<double, kAgniSize> eta;
  for (int k = 0; k < kAgniSize; ++k)
    eta[k] = 0.8 * std::pow(20.0, static_cast<double>(k) / (kAgniSize - 1));
  return eta;
}

std::array<double, kAgniSize> agni_fingerprint(const CrystalStructure &s,
                                               double cutoff) {
  if (!(cutoff > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "cutoff must be > 0");
  const auto eta = agni_widths();
  std::array<double, kAgniSize> fp {};
  const int n = s.num_sites();
  if (n == 0)
    return fp;
  std::vector<std::array<double, kAgniSize>> per_site(n);
  for_each_pair(s, cutoff, [&](int i, int, const std::array<int, 3> &,
                               double d) {
    const double fc = 0.5 * (std::cos(std::numbers::pi * d / cutoff) + 1.0);
    if (d >= cutoff)
      return;
    for (int k = 0; k < kAgniSize; ++k) {
      const double x = d / eta[k];
      per_site[i][k] += std::exp(-x * x) * fc;
    }
  });
  for (const auto &row: per_site)
    for (int k = 0; k < kAgniSize; ++k)
      fp[k] += row[k];
  for (double &v: fp)
    v /= n;
  return fp;
}

// ---- strategies ----

namespace {

constexpr std::pair<CrystalStrategy, std::string_view> kStrategyNames[] = {
  { CrystalStrategy::kPerturb, "perturb" },
  { CrystalStrategy::kRotate, "rotate" },
  { CrystalStrategy::kSwapAxes, "swap_axes" },
  { CrystalStrategy::kTranslate, "translate" },
  { CrystalStrategy::kSupercell, "supercell" },
};

}  // namespace

std::string_view to_string(CrystalStrategy strategy) {
  for (auto [s, name]: kStrategyNames)
    if (s == strategy)
      return name;
  return "unknown";
}

CrystalStrategy parse_crystal_strategy(std::string_view name) {
  for (auto [s, known]: kStrategyNames)
    if (known == name)
      return s;
  throw Error(ErrorCode::kUnknownStrategy,
              "unknown crystal strategy '" + std::string(name) + "'");
}

std::vector<CrystalStrategy> parse_crystal_strategies(std::string_view list) {
  std::vector<CrystalStrategy> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    std::size_t comma = list.find(',', pos);
    if (comma == std::string_view::npos)
      comma = list.size();
    std::string_view item = list.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ')
      item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ')
      item.remove_suffix(1);
    if (!item.empty())
      out.push_back(parse_crystal_strategy(item));
    pos = comma + 1;
  }
  return out;
}

std::vector<CrystalStrategy> default_crystal_strategies() {
  return { CrystalStrategy::kPerturb, CrystalStrategy::kRotate,
           CrystalStrategy::kSwapAxes };
}

std::vector<std::pair<CrystalStrategy, CrystalStructure>>
augment_crystal(const CrystalStructure &s, std::string_view id,
                const std::vector<CrystalStrategy> &strategies,
                std::uint64_t seed, const CrystalAugmentOptions &options) {
  if (strategies.empty())
    throw Error(ErrorCode::kUnknownStrategy, "empty strategy list");
  std::vector<std::pair<CrystalStrategy, CrystalStructure>> out;
  out.reserve(strategies.size());
  for (CrystalStrategy st: strategies) {
    RngState rng(derive_seed(seed, id, to_string(st)));
    switch (st) {
    case CrystalStrategy::kPerturb:
      out.emplace_back(st, perturb(s, rng, options.max_dist));
      break;
    case CrystalStrategy::kRotate:
      out.emplace_back(st, rotate(s, rng, options.max_dist));
      break;
    case CrystalStrategy::kSwapAxes:
      out.emplace_back(st, swap_axes(s, rng));
      break;
    case CrystalStrategy::kTranslate:
      out.emplace_back(st, translate_sites(s, rng, options.translate_fraction,
                                           options.max_dist));
      break;
    case CrystalStrategy::kSupercell:
      out.emplace_back(st, supercell(s, options.supercell_scale));
      break;
    }
  }
  return out;
}

}  // namespace chemaug
