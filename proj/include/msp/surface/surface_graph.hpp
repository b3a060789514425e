#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "msp/core/feature_graph.hpp"
#include "msp/io/mesh.hpp"
#include "msp/io/protein.hpp"

namespace msp {

inline constexpr std::size_t kSurfaceNodeFeatures = 4;  // shape index, hydropathy, charge, donor
inline constexpr std::size_t kSurfaceEdgeFeatures = 9;

// Column layout of the surface edge features.
enum SurfaceEdgeFeature : std::size_t {
  kDihedral = 0,
  kInnerAngle1,
  kInnerAngle2,
  kLengthRatio1,
  kLengthRatio2,
  kEndpointDistance,
  kNormalAngle,
  kLengthRatioMin,
  kLengthRatioMax,
};

struct ShapeIndexResult {
  std::vector<double> values;      // in [-1, 1]
  std::vector<bool> degenerate;    // fit was rank-deficient; value forced to 0
};

// Principal curvatures from a least-squares quadric fitted to the one-ring in
// the vertex tangent plane. Curvature is positive where the surface bends away
// from the normal, so a sphere with outward normals has shape index -1.
ShapeIndexResult compute_shape_index(const TriMesh& m);

// Shape index from principal curvatures (any order).
double shape_index_from_curvatures(double k1, double k2);

// One row per unique_edges(m) entry.
Matrix compute_mesh_edge_features(const TriMesh& m);

// Flat residue index per vertex: from the vertex->atom map when present,
// otherwise the residue of the nearest heavy atom (ties -> lower residue).
std::vector<int> assign_residue_ids(const TriMesh& m, const ProteinStructure& p);

struct ChemicalFeatures {
  std::vector<double> hydropathy;
  std::vector<double> charge;
  std::vector<double> donor;
};

ChemicalFeatures map_chemical_features(const TriMesh& m, const ProteinStructure& p,
                                       const std::vector<int>& residue_ids);

// "vertex_index<TAB>value" lines; values replace the charge column.
std::vector<double> parse_electrostatics_sidecar(std::string_view text, std::size_t vertex_count);

struct DecimationResult {
  TriMesh mesh;
  double cell_size = 0.0;  // 0 when the input was returned unchanged
  bool reached = true;     // false: target band missed, best effort returned
};

// Vertex clustering on an axis-aligned grid anchored at the origin. Cluster
// positions are member means; the atom map follows the cluster majority.
TriMesh decimate_with_cell_size(const TriMesh& m, double cell_size);

// Bisects the cell size until the face count lands in [0.8, 1.2] * target.
DecimationResult decimate_mesh(const TriMesh& m, std::size_t target_faces);

struct SurfaceGraph {
  FeatureGraph graph;  // node rows: shape index, hydropathy, charge, donor
  std::vector<bool> degenerate_curvature;
  std::vector<bool> nonmanifold;
};

struct SurfaceGraphOptions {
  std::optional<std::vector<double>> electrostatics;  // per-vertex override
};

SurfaceGraph build_surface_graph(const TriMesh& m, const ProteinStructure& p,
                                 const SurfaceGraphOptions& opts = {});

}  // namespace msp
