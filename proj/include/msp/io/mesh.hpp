#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "msp/core/vec3.hpp"

namespace msp {

using Face = std::array<std::uint32_t, 3>;

struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<Vec3> normals;  // unit, one per vertex
  // Optional vertex -> flat atom index (see flatten_atoms).
  std::optional<std::vector<std::uint32_t>> vertex_atom;
  // Vertices touching an edge shared by more than two faces.
  std::vector<bool> nonmanifold;

  std::size_t vertex_count() const { return vertices.size(); }
  std::size_t face_count() const { return faces.size(); }
};

using MeshEdge = std::pair<std::uint32_t, std::uint32_t>;  // first < second

// Unique undirected edges sorted lexicographically.
std::vector<MeshEdge> unique_edges(const TriMesh& m);

// Area-weighted face normals accumulated per vertex; isolated vertices get +z.
std::vector<Vec3> compute_vertex_normals(const std::vector<Vec3>& vertices,
                                         const std::vector<Face>& faces);

// Flags vertices on edges with more than two incident faces.
std::vector<bool> find_nonmanifold_vertices(const TriMesh& m);

// OFF reader. Non-manifold edges are recorded in TriMesh::nonmanifold rather
// than rejected.
TriMesh parse_mesh(std::string_view off_text);

// "vertex_index<TAB>atom_index" lines; attaches the map to the mesh.
void attach_vertex_atom_map(TriMesh& mesh, std::string_view sidecar_text);

}  // namespace msp
