#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "msp/core/error.hpp"
#include "msp/surface/surface_graph.hpp"

namespace msp {
namespace {

using CellKey = std::array<std::int64_t, 3>;

CellKey cell_of(const Vec3& p, double cell) {
  return {static_cast<std::int64_t>(std::floor(p.x / cell)),
          static_cast<std::int64_t>(std::floor(p.y / cell)),
          static_cast<std::int64_t>(std::floor(p.z / cell))};
}

}  // namespace

TriMesh decimate_with_cell_size(const TriMesh& m, double cell_size) {
  if (!(cell_size > 0.0)) fail(ErrorCode::kInvalidArgument, "cell size must be positive");

  // Clusters numbered by first member vertex.
  std::map<CellKey, std::uint32_t> cluster_of_cell;
  std::vector<std::uint32_t> cluster(m.vertices.size());
  std::vector<Vec3> sum;
  std::vector<std::size_t> count;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    const auto key = cell_of(m.vertices[v], cell_size);
    auto [it, inserted] = cluster_of_cell.try_emplace(key, static_cast<std::uint32_t>(sum.size()));
    if (inserted) {
      sum.emplace_back();
      count.push_back(0);
    }
    cluster[v] = it->second;
    sum[it->second] += m.vertices[v];
    ++count[it->second];
  }

  std::vector<Face> faces;
  std::set<std::array<std::uint32_t, 3>> seen;
  for (const auto& f : m.faces) {
    const Face g{cluster[f[0]], cluster[f[1]], cluster[f[2]]};
    if (g[0] == g[1] || g[1] == g[2] || g[0] == g[2]) continue;
    std::array<std::uint32_t, 3> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    if (!seen.insert(sorted).second) continue;
    faces.push_back(g);
  }

  // Drop clusters no longer referenced by any face.
  std::vector<std::uint32_t> remap(sum.size(), std::numeric_limits<std::uint32_t>::max());
  std::vector<bool> used(sum.size(), false);
  for (const auto& f : faces) {
    for (auto c : f) used[c] = true;
  }
  TriMesh out;
  for (std::uint32_t c = 0; c < sum.size(); ++c) {
    if (!used[c]) continue;
    remap[c] = static_cast<std::uint32_t>(out.vertices.size());
    out.vertices.push_back(sum[c] / static_cast<double>(count[c]));
  }
  for (auto& f : faces) {
    for (auto& c : f) c = remap[c];
  }
  out.faces = std::move(faces);

  if (m.vertex_atom) {
    // Majority atom per cluster, ties to the lower atom index.
    std::vector<std::map<std::uint32_t, std::size_t>> votes(sum.size());
    for (std::size_t v = 0; v < m.vertices.size(); ++v) ++votes[cluster[v]][(*m.vertex_atom)[v]];
    std::vector<std::uint32_t> map(out.vertices.size());
    for (std::uint32_t c = 0; c < sum.size(); ++c) {
      if (!used[c]) continue;
      std::uint32_t best = 0;
      std::size_t best_n = 0;
      for (const auto& [atom, n] : votes[c]) {
        if (n > best_n) {
          best = atom;
          best_n = n;
        }
      }
      map[remap[c]] = best;
    }
    out.vertex_atom = std::move(map);
  }
  out.normals = compute_vertex_normals(out.vertices, out.faces);
  out.nonmanifold = find_nonmanifold_vertices(out);
  return out;
}

DecimationResult decimate_mesh(const TriMesh& m, std::size_t target_faces) {
  if (target_faces < 4) fail(ErrorCode::kInvalidArgument, "target face count must be >= 4");
  if (target_faces >= m.faces.size()) return {m, 0.0, true};

  const double lo_band = 0.8 * static_cast<double>(target_faces);
  const double hi_band = 1.2 * static_cast<double>(target_faces);

  Vec3 lo = m.vertices.front();
  Vec3 hi = lo;
  for (const auto& v : m.vertices) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
  }
  double min_edge = std::numeric_limits<double>::infinity();
  for (const auto& [a, b] : unique_edges(m)) min_edge = std::min(min_edge, distance(m.vertices[a], m.vertices[b]));

  double small = std::max(min_edge * 0.25, 1e-9);
  double large = std::max(norm(hi - lo), small * 2.0);
  DecimationResult best{m, 0.0, false};
  double best_gap = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = 0.5 * (small + large);
    TriMesh candidate = decimate_with_cell_size(m, mid);
    const auto faces = static_cast<double>(candidate.faces.size());
    const double gap = std::abs(faces - static_cast<double>(target_faces));
    const bool in_band = faces >= lo_band && faces <= hi_band;
    if (in_band || gap < best_gap) {
      best_gap = gap;
      best = {std::move(candidate), mid, in_band};
      if (in_band) return best;
    }
    if (faces > hi_band) small = mid;
    else large = mid;
  }
  return best;
}

}  // namespace msp
