#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "msp/surface/surface_graph.hpp"

namespace msp {
namespace {

constexpr double kFlatCurvature = 1e-8;

std::vector<std::vector<std::uint32_t>> one_rings(const TriMesh& m) {
  std::vector<std::set<std::uint32_t>> rings(m.vertices.size());
  for (const auto& f : m.faces) {
    for (int k = 0; k < 3; ++k) {
      rings[f[k]].insert(f[(k + 1) % 3]);
      rings[f[k]].insert(f[(k + 2) % 3]);
    }
  }
  std::vector<std::vector<std::uint32_t>> out(rings.size());
  for (std::size_t i = 0; i < rings.size(); ++i) out[i].assign(rings[i].begin(), rings[i].end());
  return out;
}

// Orthonormal tangent basis for a unit normal.
std::pair<Vec3, Vec3> tangent_frame(const Vec3& n) {
  const Vec3 helper = std::abs(n.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  const Vec3 t1 = normalized(cross(n, helper));
  return {t1, cross(n, t1)};
}

}  // namespace

double shape_index_from_curvatures(double k1, double k2) {
  if (k1 < k2) std::swap(k1, k2);
  if (std::max(std::abs(k1), std::abs(k2)) < kFlatCurvature) return 0.0;
  if (k1 == k2) return k1 > 0.0 ? -1.0 : 1.0;  // limit of the formula at an umbilic
  return (2.0 / std::numbers::pi) * std::atan((k2 + k1) / (k2 - k1));
}

ShapeIndexResult compute_shape_index(const TriMesh& m) {
  const auto rings = one_rings(m);
  ShapeIndexResult out;
  out.values.assign(m.vertices.size(), 0.0);
  out.degenerate.assign(m.vertices.size(), false);

  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    const auto& ring = rings[v];
    if (ring.size() < 3) {
      out.degenerate[v] = true;
      continue;
    }
    const Vec3 n = m.normals[v];
    const auto [t1, t2] = tangent_frame(n);
    // Normal equations for z = a x^2/2 + b x y + c y^2/2.
    double ata[3][3] = {};
    double atz[3] = {};
    double scale = 0.0;
    for (auto u : ring) {
      const Vec3 d = m.vertices[u] - m.vertices[v];
      const double x = dot(d, t1);
      const double y = dot(d, t2);
      const double z = dot(d, n);
      const double row[3] = {0.5 * x * x, x * y, 0.5 * y * y};
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) ata[i][j] += row[i] * row[j];
        atz[i] += row[i] * z;
      }
      scale = std::max(scale, x * x + y * y);
    }
    const double det = ata[0][0] * (ata[1][1] * ata[2][2] - ata[1][2] * ata[2][1]) -
                       ata[0][1] * (ata[1][0] * ata[2][2] - ata[1][2] * ata[2][0]) +
                       ata[0][2] * (ata[1][0] * ata[2][1] - ata[1][1] * ata[2][0]);
    // Each entry scales like r^4, so det like r^12.
    if (!(scale > 0.0) || std::abs(det) < 1e-10 * std::pow(scale, 6)) {
      out.degenerate[v] = true;
      continue;
    }
    double sol[3];
    for (int k = 0; k < 3; ++k) {
      double mk[3][3];
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) mk[i][j] = (j == k) ? atz[i] : ata[i][j];
      }
      sol[k] = (mk[0][0] * (mk[1][1] * mk[2][2] - mk[1][2] * mk[2][1]) -
                mk[0][1] * (mk[1][0] * mk[2][2] - mk[1][2] * mk[2][0]) +
                mk[0][2] * (mk[1][0] * mk[2][1] - mk[1][1] * mk[2][0])) /
               det;
    }
    // Height Hessian [[a, b], [b, c]]; curvature is its negation.
    const double a = -sol[0];
    const double b = -sol[1];
    const double c = -sol[2];
    const double mean = 0.5 * (a + c);
    const double disc = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    out.values[v] = std::clamp(shape_index_from_curvatures(mean + disc, mean - disc), -1.0, 1.0);
  }
  return out;
}

}  // namespace msp
