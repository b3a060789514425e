#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "msp/multiscale/multiscale.hpp"

namespace msp {
namespace {

void check_layer(const FeatureGraph& g, const std::string& name, bool needs_ids, std::vector<std::string>& out) {
  const std::size_t n = g.node_count();
  if (needs_ids && g.residue_ids.size() != n) {
    out.push_back(name + ": " + std::to_string(g.residue_ids.size()) + " residue ids for " + std::to_string(n) +
                  " nodes");
  }
  if (g.edge_features.rows() != g.edge_count()) {
    out.push_back(name + ": edge feature rows do not match the edge count");
  }
  std::set<GraphEdge> seen;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.edges[e];
    if (a >= n || b >= n) {
      out.push_back(name + ": edge " + std::to_string(e) + " references a missing node");
    } else if (a >= b) {
      out.push_back(name + ": edge " + std::to_string(e) + " is not stored as (low, high)");
    } else if (!seen.insert(g.edges[e]).second) {
      out.push_back(name + ": edge " + std::to_string(e) + " is duplicated");
    }
  }
  auto finite = [](const Matrix& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](double v) { return std::isfinite(v); });
  };
  if (!finite(g.node_features)) out.push_back(name + ": non-finite node feature");
  if (!finite(g.edge_features)) out.push_back(name + ": non-finite edge feature");
}

}  // namespace

std::vector<std::string> validate(const MultiScaleGraph& g) {
  std::vector<std::string> out;
  if (g.structure.node_count() == 0) out.push_back("structure: layer is empty");
  if (g.surface.node_count() == 0) out.push_back("surface: layer is empty");
  check_layer(g.structure, "structure", true, out);
  check_layer(g.surface, "surface", true, out);

  std::unordered_map<int, std::uint32_t> node_of;
  if (g.structure.residue_ids.size() == g.structure.node_count()) {
    for (std::uint32_t i = 0; i < g.structure.node_count(); ++i) {
      if (!node_of.emplace(g.structure.residue_ids[i], i).second) {
        out.push_back("structure: residue id " + std::to_string(g.structure.residue_ids[i]) + " repeats");
      }
    }
  }

  const std::size_t ns = g.surface.node_count();
  const std::size_t nb = g.structure.node_count();
  const bool surface_ids = g.surface.residue_ids.size() == ns;
  const bool structure_ids = g.structure.residue_ids.size() == nb;
  std::vector<int> incoming(ns, 0);
  for (std::size_t i = 0; i < g.cross_edges.size(); ++i) {
    const auto [s, b] = g.cross_edges[i];
    const std::string tag = "cross edge " + std::to_string(i);
    if (s >= ns || b >= nb) {
      out.push_back(tag + ": endpoint out of range");
      continue;
    }
    ++incoming[s];
    if (surface_ids && structure_ids && g.surface.residue_ids[s] != g.structure.residue_ids[b]) {
      out.push_back(tag + ": residue ids differ (" + std::to_string(g.surface.residue_ids[s]) + " vs " +
                    std::to_string(g.structure.residue_ids[b]) + ")");
    }
  }
  for (std::size_t v = 0; v < ns; ++v) {
    if (incoming[v] != 1) {
      out.push_back("surface node " + std::to_string(v) + ": " + std::to_string(incoming[v]) + " cross edges");
    }
  }

  if (g.superpixels) {
    const SuperpixelLayer& sp = *g.superpixels;
    const std::size_t k = sp.graph.node_count();
    check_layer(sp.graph, "superpixels", true, out);
    if (sp.labels.size() != ns) out.push_back("superpixels: labels do not cover the surface layer");
    if (sp.graph.node_features.cols() != 4 * g.surface.node_features.cols()) {
      out.push_back("superpixels: summary width does not match the surface features");
    }
    std::vector<std::vector<std::uint32_t>> members(k);
    for (std::uint32_t v = 0; v < sp.labels.size(); ++v) {
      const int l = sp.labels[v];
      if (l < 0 || static_cast<std::size_t>(l) >= k) {
        out.push_back("superpixels: label of vertex " + std::to_string(v) + " out of range");
      } else {
        members[static_cast<std::size_t>(l)].push_back(v);
      }
    }
    std::vector<int> outgoing(k, 0);
    for (std::size_t i = 0; i < sp.cross_edges.size(); ++i) {
      const auto [s, b] = sp.cross_edges[i];
      const std::string tag = "superpixel cross edge " + std::to_string(i);
      if (s >= k || b >= nb) {
        out.push_back(tag + ": endpoint out of range");
        continue;
      }
      ++outgoing[s];
      if (!surface_ids || !structure_ids) continue;
      const int rid = g.structure.residue_ids[b];
      const bool member = std::any_of(members[s].begin(), members[s].end(),
                                      [&](std::uint32_t v) { return v < ns && g.surface.residue_ids[v] == rid; });
      if (!member) out.push_back(tag + ": residue " + std::to_string(rid) + " is not in the superpixel");
    }
    for (std::size_t s = 0; s < k; ++s) {
      if (members[s].empty()) {
        out.push_back("superpixel " + std::to_string(s) + ": no members");
        continue;
      }
      if (outgoing[s] == 0) out.push_back("superpixel " + std::to_string(s) + ": no cross edge");
      if (surface_ids && sp.graph.residue_ids.size() == k && sp.labels.size() == ns &&
          sp.graph.residue_ids[s] != majority_residue(g.surface.residue_ids, members[s])) {
        out.push_back("superpixel " + std::to_string(s) + ": residue id is not the member majority");
      }
    }
  }

  if (g.ligand) {
    check_layer(*g.ligand, "ligand", false, out);
    if (g.ligand->node_count() == 0) out.push_back("ligand: graph is empty");
  }
  return out;
}

}  // namespace msp
