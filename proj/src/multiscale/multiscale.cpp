#include "msp/multiscale/multiscale.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "msp/core/error.hpp"
#include "msp/superpixel/superpixel_graph.hpp"

namespace msp {

FeatureGraph induced_subgraph(const FeatureGraph& g, const std::vector<bool>& keep) {
  std::vector<std::int64_t> remap(g.node_count(), -1);
  std::size_t n = 0;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (keep[v]) remap[v] = static_cast<std::int64_t>(n++);
  }
  FeatureGraph out;
  out.node_features = Matrix(n, g.node_features.cols());
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (remap[v] < 0) continue;
    const auto r = static_cast<std::size_t>(remap[v]);
    std::copy(g.node_features.row(v).begin(), g.node_features.row(v).end(), out.node_features.row(r).begin());
    if (!g.residue_ids.empty()) out.residue_ids.push_back(g.residue_ids[v]);
  }
  std::vector<double> rows;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.edges[e];
    if (remap[a] < 0 || remap[b] < 0) continue;
    out.edges.emplace_back(static_cast<std::uint32_t>(remap[a]), static_cast<std::uint32_t>(remap[b]));
    rows.insert(rows.end(), g.edge_features.row(e).begin(), g.edge_features.row(e).end());
  }
  out.edge_features = Matrix(out.edges.size(), g.edge_features.cols(), std::move(rows));
  return out;
}

MultiScaleBuild build_multiscale(std::string protein_id, const FeatureGraph& surface, const FeatureGraph& structure,
                                 const MultiScaleOptions& opts) {
  if (structure.node_count() == 0) fail(ErrorCode::kEmptyLayer, "structure layer is empty");
  if (surface.node_count() == 0) fail(ErrorCode::kEmptyLayer, "surface layer is empty");
  if (surface.residue_ids.size() != surface.node_count() || structure.residue_ids.size() != structure.node_count()) {
    fail(ErrorCode::kLengthMismatch, "every node needs a residue id");
  }

  std::unordered_map<int, std::uint32_t> node_of;
  for (std::uint32_t i = 0; i < structure.node_count(); ++i) node_of.emplace(structure.residue_ids[i], i);

  MultiScaleBuild out;
  std::vector<bool> keep(surface.node_count(), true);
  for (std::uint32_t v = 0; v < surface.node_count(); ++v) {
    if (!node_of.contains(surface.residue_ids[v])) {
      keep[v] = false;
      out.dropped_surface_nodes.push_back(v);
    }
  }
  MultiScaleGraph& g = out.graph;
  g.protein_id = std::move(protein_id);
  g.structure = structure;
  g.surface = out.dropped_surface_nodes.empty() ? surface : induced_subgraph(surface, keep);
  if (g.surface.node_count() == 0) fail(ErrorCode::kEmptyLayer, "no surface vertex maps onto a structure residue");

  g.cross_edges.reserve(g.surface.node_count());
  for (std::uint32_t v = 0; v < g.surface.node_count(); ++v) {
    g.cross_edges.emplace_back(v, node_of.at(g.surface.residue_ids[v]));
  }
  if (opts.mode != SurfaceMode::kFull) attach_superpixels(g, opts.ers, opts.fan_out);
  return out;
}

int majority_residue(const std::vector<int>& residue_ids, const std::vector<std::uint32_t>& members) {
  std::map<int, std::size_t> counts;
  for (auto v : members) ++counts[residue_ids[v]];
  int best = 0;
  std::size_t best_count = 0;
  for (const auto& [rid, c] : counts) {
    if (c > best_count) {
      best = rid;
      best_count = c;
    }
  }
  return best;
}

SuperpixelLayer make_superpixel_layer(const MultiScaleGraph& g, const std::vector<int>& labels, bool fan_out) {
  SuperpixelGraph sg = build_superpixel_graph(labels, g.surface);
  std::unordered_map<int, std::uint32_t> node_of;
  for (std::uint32_t i = 0; i < g.structure.node_count(); ++i) node_of.emplace(g.structure.residue_ids[i], i);

  SuperpixelLayer layer;
  layer.labels = labels;
  layer.graph = std::move(sg.graph);
  layer.graph.residue_ids.clear();
  for (std::uint32_t s = 0; s < sg.members.size(); ++s) {
    const int rid = majority_residue(g.surface.residue_ids, sg.members[s]);
    layer.graph.residue_ids.push_back(rid);
    if (!fan_out) {
      layer.cross_edges.emplace_back(s, node_of.at(rid));
      continue;
    }
    std::vector<int> rids;
    for (auto v : sg.members[s]) rids.push_back(g.surface.residue_ids[v]);
    std::sort(rids.begin(), rids.end());
    rids.erase(std::unique(rids.begin(), rids.end()), rids.end());
    for (int r : rids) layer.cross_edges.emplace_back(s, node_of.at(r));
  }
  return layer;
}

void attach_superpixels(MultiScaleGraph& g, const ErsOptions& ers, bool fan_out) {
  const Segmentation seg = segment_ers(g.surface, ers);
  g.superpixels = make_superpixel_layer(g, seg.labels, fan_out);
}

}  // namespace msp
