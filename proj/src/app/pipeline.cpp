#include "msp/app/pipeline.hpp"

#include "msp/io/ligand.hpp"
#include "msp/io/mesh.hpp"
#include "msp/io/protein.hpp"
#include "msp/io/text_file.hpp"
#include "msp/multiscale/multiscale.hpp"
#include "msp/nn/ligand_features.hpp"
#include "msp/structure/structure_graph.hpp"
#include "msp/surface/surface_graph.hpp"

namespace msp {
namespace {

std::filesystem::path with_suffix(const std::filesystem::path& p, const char* suffix) {
  return std::filesystem::path(p.string() + suffix);
}

}  // namespace

PreprocessResult preprocess_record(const DatasetRecord& rec, const PreprocessOptions& opts) {
  PreprocessResult out;
  const ProteinStructure protein = parse_pdb(read_text_file(rec.pdb));

  TriMesh mesh = parse_mesh(read_text_file(rec.mesh));
  if (const auto atoms = with_suffix(rec.mesh, ".atoms"); std::filesystem::exists(atoms)) {
    attach_vertex_atom_map(mesh, read_text_file(atoms));
  }
  SurfaceGraphOptions sopts;
  if (const auto elec = with_suffix(rec.mesh, ".elec"); std::filesystem::exists(elec)) {
    if (opts.target_faces > 0) {
      out.warnings.push_back("electrostatics sidecar ignored because the mesh is decimated");
    } else {
      sopts.electrostatics = parse_electrostatics_sidecar(read_text_file(elec), mesh.vertices.size());
    }
  }
  if (opts.target_faces > 0) {
    DecimationResult d = decimate_mesh(mesh, opts.target_faces);
    if (!d.reached) out.warnings.push_back("decimation missed the target face band");
    mesh = std::move(d.mesh);
  }
  const SurfaceGraph surface = build_surface_graph(mesh, protein, sopts);
  std::size_t degenerate = 0;
  for (bool b : surface.degenerate_curvature) degenerate += b ? 1 : 0;
  if (degenerate > 0) out.warnings.push_back(std::to_string(degenerate) + " vertices with degenerate curvature");

  StructureGraphOptions gopts;
  gopts.cutoff = opts.cutoff;
  StructureGraph structure;
  if (const auto ss = with_suffix(rec.pdb, ".ss"); std::filesystem::exists(ss)) {
    auto labels = assign_secondary_structure(protein);
    apply_secondary_structure_sidecar(labels, read_text_file(ss));
    structure = build_structure_graph(protein, gopts, labels);
  } else {
    structure = build_structure_graph(protein, gopts);
  }
  if (!structure.excluded_residues.empty()) {
    out.warnings.push_back(std::to_string(structure.excluded_residues.size()) + " residues without a C-alpha atom");
  }

  MultiScaleBuild built = build_multiscale(rec.id, surface.graph, structure.graph);
  if (!built.dropped_surface_nodes.empty()) {
    out.warnings.push_back(std::to_string(built.dropped_surface_nodes.size()) +
                           " surface vertices mapped to excluded residues");
  }
  out.graph = std::move(built.graph);
  if (!rec.mol.empty()) out.graph.ligand = featurize_ligand(parse_mol(read_text_file(rec.mol))).graph;
  return out;
}

}  // namespace msp
