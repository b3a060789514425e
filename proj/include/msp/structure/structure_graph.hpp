#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "msp/core/feature_graph.hpp"
#include "msp/io/protein.hpp"

namespace msp {

enum class SecondaryStructure { kH = 0, kG, kI, kE, kB, kT, kC, kUnknown };
inline constexpr std::size_t kSecondaryClasses = 8;

char secondary_structure_letter(SecondaryStructure s);

// One label per flat residue. Helix and strand come from backbone dihedral
// windows over runs of consecutive residues; G, I, B and T are never emitted.
std::vector<SecondaryStructure> assign_secondary_structure(const ProteinStructure& p);

// Backbone dihedrals per flat residue in degrees; NaN where undefined
// (chain terminus, missing backbone atom, or chain break).
struct BackboneDihedrals {
  std::vector<double> phi;
  std::vector<double> psi;
};
BackboneDihedrals backbone_dihedrals(const ProteinStructure& p);

// "residue_index<TAB>label" lines overriding the heuristic labels.
void apply_secondary_structure_sidecar(std::vector<SecondaryStructure>& labels,
                                       std::string_view sidecar_text);

struct SasaOptions {
  double probe = 1.5;
  int n_points = 92;
};

// Unit sphere points on a golden spiral; deterministic.
std::vector<Vec3> golden_spiral_points(int n);

// Shrake-Rupley areas for arbitrary spheres (center, vdw radius).
std::vector<double> shrake_rupley(const std::vector<Vec3>& centers, const std::vector<double>& radii,
                                  const SasaOptions& opts);

// Per-residue SASA in A^2 over heavy atoms, indexed by flat residue.
std::vector<double> compute_sasa(const ProteinStructure& p, const SasaOptions& opts = {});

inline constexpr std::size_t kStructureNodeFeatures = 23 + kSecondaryClasses + 2;
inline constexpr std::size_t kStructureEdgeFeatures = 2;  // C-alpha distance, side-chain angle
// The SASA slot is stored in units of 100 A^2 to keep it on the scale of the
// other node features.
inline constexpr double kSasaFeatureScale = 0.01;

struct StructureGraphOptions {
  double cutoff = 10.0;
  SasaOptions sasa;
};

struct StructureGraph {
  // Node rows: residue one-hot, secondary-structure one-hot, scaled SASA,
  // hydropathy. residue_ids hold flat residue indices.
  FeatureGraph graph;
  std::vector<std::size_t> excluded_residues;  // flat indices lacking a C-alpha
};

StructureGraph build_structure_graph(const ProteinStructure& p, const StructureGraphOptions& opts = {});
StructureGraph build_structure_graph(const ProteinStructure& p, const StructureGraphOptions& opts,
                                     const std::vector<SecondaryStructure>& labels);

}  // namespace msp
