#include <sstream>
#include <string>

#include "msp/core/error.hpp"
#include "msp/core/spatial_grid.hpp"
#include "msp/structure/residue_tables.hpp"
#include "msp/surface/surface_graph.hpp"

namespace msp {
namespace {

struct HeavyAtoms {
  std::vector<Vec3> xyz;
  std::vector<AtomRef> refs;
};

HeavyAtoms heavy_atoms(const ProteinStructure& p) {
  HeavyAtoms out;
  for (const auto& ref : flatten_atoms(p)) {
    if (!ref.atom->is_heavy) continue;
    out.xyz.push_back(ref.atom->xyz);
    out.refs.push_back(ref);
  }
  return out;
}

// Atom each vertex is attributed to: the mapped atom when a vertex->atom map is
// present, else the nearest heavy atom.
std::vector<AtomRef> vertex_atoms(const TriMesh& m, const ProteinStructure& p) {
  std::vector<AtomRef> out(m.vertices.size());
  if (m.vertex_atom) {
    const auto all = flatten_atoms(p);
    for (std::size_t v = 0; v < m.vertices.size(); ++v) {
      const auto idx = (*m.vertex_atom)[v];
      if (idx >= all.size()) {
        fail(ErrorCode::kIndexOutOfRange, "vertex " + std::to_string(v) + " maps to missing atom " +
                                              std::to_string(idx));
      }
      out[v] = all[idx];
    }
    return out;
  }
  const auto heavy = heavy_atoms(p);
  if (heavy.xyz.empty()) fail(ErrorCode::kEmptyStructure, "protein has no heavy atoms");
  const SpatialGrid grid(heavy.xyz, 4.0);
  for (std::size_t v = 0; v < m.vertices.size(); ++v) out[v] = heavy.refs[grid.nearest(m.vertices[v])];
  return out;
}

}  // namespace

std::vector<int> assign_residue_ids(const TriMesh& m, const ProteinStructure& p) {
  if (p.residue_count() == 0) fail(ErrorCode::kEmptyStructure, "protein has no residues");
  const auto atoms = vertex_atoms(m, p);
  std::vector<int> ids(atoms.size());
  for (std::size_t v = 0; v < atoms.size(); ++v) ids[v] = static_cast<int>(atoms[v].residue_index);
  return ids;
}

ChemicalFeatures map_chemical_features(const TriMesh& m, const ProteinStructure& p,
                                       const std::vector<int>& residue_ids) {
  if (residue_ids.size() != m.vertices.size()) {
    fail(ErrorCode::kLengthMismatch, "residue ids do not cover the mesh");
  }
  const auto atoms = vertex_atoms(m, p);
  const auto refs = flatten_residues(p);
  ChemicalFeatures out;
  const std::size_t n = m.vertices.size();
  out.hydropathy.resize(n);
  out.charge.resize(n);
  out.donor.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto& rr = refs.at(static_cast<std::size_t>(residue_ids[v]));
    const Residue& res = p.chains[rr.chain].residues[rr.residue];
    out.hydropathy[v] = residue_hydropathy(res.name);
    out.charge[v] = residue_charge(res.name);
    // The donor flag looks at the attributed atom within its own residue.
    const auto& orr = refs.at(atoms[v].residue_index);
    const Residue& owner = p.chains[orr.chain].residues[orr.residue];
    const Atom& atom = *atoms[v].atom;
    const bool polar = atom.element == "N" || atom.element == "O";
    out.donor[v] = polar && is_hbond_donor(owner.name, atom.name) ? 1.0 : 0.0;
  }
  return out;
}

std::vector<double> parse_electrostatics_sidecar(std::string_view text, std::size_t vertex_count) {
  std::vector<double> values(vertex_count, 0.0);
  std::vector<bool> seen(vertex_count, false);
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    long long v = -1;
    double value = 0.0;
    if (!(ls >> v >> value)) fail(ErrorCode::kMalformedRecord, "bad electrostatics line: " + line);
    if (v < 0 || static_cast<std::size_t>(v) >= vertex_count) {
      fail(ErrorCode::kIndexOutOfRange, "electrostatics vertex out of range: " + line);
    }
    values[static_cast<std::size_t>(v)] = value;
    seen[static_cast<std::size_t>(v)] = true;
  }
  for (std::size_t v = 0; v < vertex_count; ++v) {
    if (!seen[v]) fail(ErrorCode::kIndexOutOfRange, "electrostatics sidecar misses vertex " + std::to_string(v));
  }
  return values;
}

}  // namespace msp
