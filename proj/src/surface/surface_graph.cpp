#include "msp/surface/surface_graph.hpp"

#include "msp/core/error.hpp"

namespace msp {

SurfaceGraph build_surface_graph(const TriMesh& m, const ProteinStructure& p,
                                 const SurfaceGraphOptions& opts) {
  if (m.vertices.empty()) fail(ErrorCode::kEmptyStructure, "mesh has no vertices");
  const auto shape = compute_shape_index(m);
  const auto ids = assign_residue_ids(m, p);
  const auto chem = map_chemical_features(m, p, ids);
  if (opts.electrostatics && opts.electrostatics->size() != m.vertices.size()) {
    fail(ErrorCode::kLengthMismatch, "electrostatics override does not match vertex count");
  }

  SurfaceGraph out;
  const std::size_t n = m.vertices.size();
  out.graph.node_features = Matrix(n, kSurfaceNodeFeatures);
  for (std::size_t v = 0; v < n; ++v) {
    out.graph.node_features(v, 0) = shape.values[v];
    out.graph.node_features(v, 1) = chem.hydropathy[v];
    out.graph.node_features(v, 2) = opts.electrostatics ? (*opts.electrostatics)[v] : chem.charge[v];
    out.graph.node_features(v, 3) = chem.donor[v];
  }
  out.graph.residue_ids = ids;
  for (const auto& e : unique_edges(m)) out.graph.edges.push_back(e);
  out.graph.edge_features = compute_mesh_edge_features(m);
  out.degenerate_curvature = shape.degenerate;
  out.nonmanifold = m.nonmanifold.empty() ? find_nonmanifold_vertices(m) : m.nonmanifold;
  return out;
}

}  // namespace msp
