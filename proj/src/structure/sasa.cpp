#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "msp/core/error.hpp"
#include "msp/core/spatial_grid.hpp"
#include "msp/structure/residue_tables.hpp"
#include "msp/structure/structure_graph.hpp"

namespace msp {

std::vector<Vec3> golden_spiral_points(int n) {
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(n));
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double y = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - y * y));
    const double theta = golden_angle * i;
    pts.push_back({r * std::cos(theta), y, r * std::sin(theta)});
  }
  return pts;
}

std::vector<double> shrake_rupley(const std::vector<Vec3>& centers, const std::vector<double>& radii,
                                  const SasaOptions& opts) {
  if (opts.probe < 0.0) fail(ErrorCode::kInvalidArgument, "probe radius must be >= 0");
  if (opts.n_points < 32) fail(ErrorCode::kInvalidArgument, "need at least 32 sphere points");
  const std::size_t n = centers.size();
  std::vector<double> area(n, 0.0);
  if (n == 0) return area;

  std::vector<double> expanded(n);
  double max_r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    expanded[i] = radii[i] + opts.probe;
    max_r = std::max(max_r, expanded[i]);
  }
  const auto sphere = golden_spiral_points(opts.n_points);
  const SpatialGrid grid(centers, 2.0 * max_r);

  for (std::size_t i = 0; i < n; ++i) {
    const double ri = expanded[i];
    auto neighbors = grid.within(centers[i], ri + max_r);
    std::erase_if(neighbors, [&](std::uint32_t j) {
      return j == i || distance(centers[i], centers[j]) >= ri + expanded[j];
    });
    int exposed = 0;
    for (const auto& u : sphere) {
      const Vec3 pt = centers[i] + u * ri;
      const bool buried = std::any_of(neighbors.begin(), neighbors.end(), [&](std::uint32_t j) {
        return distance_sq(pt, centers[j]) < expanded[j] * expanded[j];
      });
      if (!buried) ++exposed;
    }
    area[i] = 4.0 * std::numbers::pi * ri * ri * exposed / opts.n_points;
  }
  return area;
}

std::vector<double> compute_sasa(const ProteinStructure& p, const SasaOptions& opts) {
  std::vector<Vec3> centers;
  std::vector<double> radii;
  std::vector<std::size_t> owner;
  std::size_t flat = 0;
  for (const auto& chain : p.chains) {
    for (const auto& res : chain.residues) {
      for (const auto& atom : res.atoms) {
        if (!atom.is_heavy) continue;
        const auto r = vdw_radius(atom.element);
        if (!r) {
          fail(ErrorCode::kUnknownVdwRadius, "no radius for element '" + atom.element + "' in " +
                                                 res.name + " " + std::to_string(res.seq_number));
        }
        centers.push_back(atom.xyz);
        radii.push_back(*r);
        owner.push_back(flat);
      }
      ++flat;
    }
  }
  const auto per_atom = shrake_rupley(centers, radii, opts);
  std::vector<double> per_residue(flat, 0.0);
  for (std::size_t i = 0; i < per_atom.size(); ++i) per_residue[owner[i]] += per_atom[i];
  return per_residue;
}

}  // namespace msp
