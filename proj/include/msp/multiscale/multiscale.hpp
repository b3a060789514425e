#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "msp/multiscale/multiscale_graph.hpp"
#include "msp/superpixel/ers.hpp"

namespace msp {

struct MultiScaleOptions {
  SurfaceMode mode = SurfaceMode::kFull;
  ErsOptions ers;
  // Superpixel cross edges go to every member residue instead of the majority one.
  bool fan_out = false;
};

struct MultiScaleBuild {
  MultiScaleGraph graph;
  // Surface vertices (input indices) whose residue is absent from the structure layer.
  std::vector<std::uint32_t> dropped_surface_nodes;
};

// Keeps the nodes flagged in `keep` and the edges between them.
FeatureGraph induced_subgraph(const FeatureGraph& g, const std::vector<bool>& keep);

MultiScaleBuild build_multiscale(std::string protein_id, const FeatureGraph& surface, const FeatureGraph& structure,
                                 const MultiScaleOptions& opts = {});

// Segments the surface layer and attaches the superpixel layer.
void attach_superpixels(MultiScaleGraph& g, const ErsOptions& ers, bool fan_out = false);
SuperpixelLayer make_superpixel_layer(const MultiScaleGraph& g, const std::vector<int>& labels, bool fan_out);

// Majority residue id of a member set; ties go to the lowest id.
int majority_residue(const std::vector<int>& residue_ids, const std::vector<std::uint32_t>& members);

// One human-readable entry per broken invariant; empty when valid.
std::vector<std::string> validate(const MultiScaleGraph& g);

inline constexpr int kGraphSchemaVersion = 1;

// Versioned JSON with a content checksum. Refuses graphs without structure nodes.
std::string write_graph(const MultiScaleGraph& g);
MultiScaleGraph read_graph(std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace msp
