#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "msp/core/error.hpp"
#include "msp/surface/surface_graph.hpp"

namespace msp {
namespace {

constexpr double kMinFaceArea = 1e-12;

std::uint32_t opposite_vertex(const Face& f, std::uint32_t a, std::uint32_t b) {
  for (auto v : f) {
    if (v != a && v != b) return v;
  }
  return f[0];
}

}  // namespace

Matrix compute_mesh_edge_features(const TriMesh& m) {
  const auto edges = unique_edges(m);
  std::map<MeshEdge, std::vector<std::size_t>> incident;
  for (std::size_t fi = 0; fi < m.faces.size(); ++fi) {
    const auto& f = m.faces[fi];
    for (int k = 0; k < 3; ++k) {
      incident[std::minmax(f[k], f[(k + 1) % 3])].push_back(fi);
    }
  }
  std::vector<Vec3> face_normal(m.faces.size());
  for (std::size_t fi = 0; fi < m.faces.size(); ++fi) {
    const auto& f = m.faces[fi];
    const Vec3 n = cross(m.vertices[f[1]] - m.vertices[f[0]], m.vertices[f[2]] - m.vertices[f[0]]);
    if (0.5 * norm(n) < kMinFaceArea) {
      fail(ErrorCode::kZeroAreaFace, "face " + std::to_string(fi) + " has zero area");
    }
    face_normal[fi] = normalized(n);
  }

  Matrix out(edges.size(), kSurfaceEdgeFeatures);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    const auto& faces = incident.at(edges[e]);
    // Boundary edges reuse their single face for the second slot; edges with
    // more than two faces use the first two.
    const std::size_t f1 = faces[0];
    const std::size_t f2 = faces.size() > 1 ? faces[1] : faces[0];
    const Vec3 pa = m.vertices[a];
    const Vec3 pb = m.vertices[b];
    const double len = distance(pa, pb);

    double inner[2];
    double ratio[2];
    const std::size_t fs[2] = {f1, f2};
    for (int k = 0; k < 2; ++k) {
      const Vec3 pc = m.vertices[opposite_vertex(m.faces[fs[k]], a, b)];
      inner[k] = angle_between(pa - pc, pb - pc);
      const double height = norm(cross(pb - pa, pc - pa)) / len;
      ratio[k] = len / height;
    }
    out(e, kDihedral) = std::numbers::pi - angle_between(face_normal[f1], face_normal[f2]);
    out(e, kInnerAngle1) = inner[0];
    out(e, kInnerAngle2) = inner[1];
    out(e, kLengthRatio1) = ratio[0];
    out(e, kLengthRatio2) = ratio[1];
    out(e, kEndpointDistance) = len;
    out(e, kNormalAngle) = angle_between(m.normals[a], m.normals[b]);
    out(e, kLengthRatioMin) = std::min(ratio[0], ratio[1]);
    out(e, kLengthRatioMax) = std::max(ratio[0], ratio[1]);
  }
  return out;
}

}  // namespace msp
