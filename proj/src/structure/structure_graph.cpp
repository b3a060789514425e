#include "msp/structure/structure_graph.hpp"

#include <iostream>
#include <string>

#include "msp/core/error.hpp"
#include "msp/core/spatial_grid.hpp"
#include "msp/structure/residue_tables.hpp"

namespace msp {
namespace {

// C-alpha -> C-beta, or C-alpha -> N for glycine and truncated side chains.
Vec3 side_chain_direction(const Residue& res, const Atom& ca) {
  if (const Atom* cb = res.find_atom("CB"); cb && res.name != "GLY") return cb->xyz - ca.xyz;
  if (const Atom* n = res.find_atom("N")) return n->xyz - ca.xyz;
  return {};
}

}  // namespace

StructureGraph build_structure_graph(const ProteinStructure& p, const StructureGraphOptions& opts) {
  return build_structure_graph(p, opts, assign_secondary_structure(p));
}

StructureGraph build_structure_graph(const ProteinStructure& p, const StructureGraphOptions& opts,
                                     const std::vector<SecondaryStructure>& labels) {
  if (!(opts.cutoff > 0.0)) fail(ErrorCode::kInvalidArgument, "cutoff must be positive");
  if (p.residue_count() == 0) fail(ErrorCode::kEmptyStructure, "protein has no residues");
  if (labels.size() != p.residue_count()) {
    fail(ErrorCode::kLengthMismatch, "secondary-structure labels do not match residue count");
  }
  const auto sasa = compute_sasa(p, opts.sasa);

  StructureGraph out;
  std::vector<const Residue*> kept;
  std::vector<Vec3> ca_xyz;
  std::vector<Vec3> side_dir;
  std::size_t flat = 0;
  for (const auto& chain : p.chains) {
    for (const auto& res : chain.residues) {
      const Atom* ca = res.find_atom("CA");
      if (!ca) {
        std::cerr << "warning: " << error_code_name(ErrorCode::kMissingBackboneAtom) << ": residue "
                  << res.name << " " << res.seq_number << " (chain " << chain.id
                  << ") has no CA and is excluded\n";
        out.excluded_residues.push_back(flat++);
        continue;
      }
      kept.push_back(&res);
      ca_xyz.push_back(ca->xyz);
      side_dir.push_back(side_chain_direction(res, *ca));
      out.graph.residue_ids.push_back(static_cast<int>(flat));
      ++flat;
    }
  }
  const std::size_t n = kept.size();
  if (n == 0) fail(ErrorCode::kMissingBackboneAtom, "no residue has a C-alpha atom");

  auto& nodes = out.graph.node_features;
  nodes = Matrix(n, kStructureNodeFeatures);
  for (std::size_t i = 0; i < n; ++i) {
    const auto rid = static_cast<std::size_t>(out.graph.residue_ids[i]);
    nodes(i, residue_class(kept[i]->name)) = 1.0;
    nodes(i, kResidueClasses + static_cast<std::size_t>(labels[rid])) = 1.0;
    nodes(i, kResidueClasses + kSecondaryClasses) = sasa[rid] * kSasaFeatureScale;
    nodes(i, kResidueClasses + kSecondaryClasses + 1) = residue_hydropathy(kept[i]->name);
  }

  const SpatialGrid grid(ca_xyz, opts.cutoff);
  std::vector<double> edge_rows;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (auto j : grid.within(ca_xyz[i], opts.cutoff)) {
      if (j <= i) continue;
      out.graph.edges.emplace_back(i, j);
      edge_rows.push_back(distance(ca_xyz[i], ca_xyz[j]));
      const Vec3 &a = side_dir[i], &b = side_dir[j];
      edge_rows.push_back(norm(a) > 0.0 && norm(b) > 0.0 ? angle_between(a, b) : 0.0);
    }
  }
  out.graph.edge_features = Matrix(out.graph.edges.size(), kStructureEdgeFeatures, std::move(edge_rows));
  return out;
}

}  // namespace msp
