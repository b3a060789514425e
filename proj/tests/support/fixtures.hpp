#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "msp/core/feature_graph.hpp"
#include "msp/core/rng.hpp"
#include "msp/core/vec3.hpp"
#include "msp/io/mesh.hpp"
#include "msp/io/protein.hpp"
#include "msp/multiscale/multiscale_graph.hpp"

namespace msp::testing {

// Subdivided icosahedron projected on a sphere, faces wound outward.
// Level 1 gives 42 vertices / 80 faces, level 2 gives 162 / 320.
TriMesh icosphere(int level, double radius = 1.0, Vec3 center = {});
TriMesh tetrahedron();
// Height field z = f(x, y) on an n x n grid centred at the origin.
TriMesh height_field(int n, double spacing, const std::function<double(double, double)>& f);
TriMesh cube();

std::string to_off(const TriMesh& m);

// Ideal backbone (N, CA, C, O, plus CB for non-glycine) laid out from
// per-residue phi/psi in degrees.
struct ResidueSpec {
  std::string name;
  double phi = -57.0;
  double psi = -47.0;
};
ProteinStructure build_chain(const std::vector<ResidueSpec>& residues, char chain_id = 'A');
ProteinStructure helix(const std::vector<std::string>& names);
std::string to_pdb(const ProteinStructure& p);

// Natural-extension placement of d from a, b, c.
Vec3 place_atom(const Vec3& a, const Vec3& b, const Vec3& c, double bond, double angle_deg, double torsion_deg);

// Random connected graph: a random spanning tree plus extra edges, random
// features in [0, 1). Edges are stored (low, high) without duplicates.
FeatureGraph random_connected_graph(std::size_t n, std::size_t extra_edges, std::size_t feature_dim, Rng& rng);

// Small hand-built complex with random features: a ring-like surface graph,
// a chain structure graph, and a ligand graph. Every residue owns at least one
// surface vertex when n_vertices >= n_residues.
MultiScaleGraph toy_complex(std::size_t n_residues, std::size_t n_vertices, Rng& rng, bool with_ligand = true);

// Relabels every layer of g by random permutations and returns the result.
MultiScaleGraph permute_complex(const MultiScaleGraph& g, Rng& rng);

extern const char* const kMethaneMol;
extern const char* const kBenzeneMol;
extern const char* const kAspirinMol;

// Writes PDB, OFF, MOL and an index CSV for `n` small synthetic complexes.
// Returns the index path.
std::filesystem::path write_synthetic_dataset(const std::filesystem::path& dir, std::size_t n, std::uint64_t seed);

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

}  // namespace msp::testing
