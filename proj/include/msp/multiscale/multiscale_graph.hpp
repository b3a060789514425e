#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msp/core/feature_graph.hpp"

namespace msp {

enum class SurfaceMode {
  kFull,        // message passing over every surface vertex
  kSuperpixel,  // message passing over the superpixel graph
  kSummary,     // superpixel summaries fed straight into the fusion step
};

inline std::string_view surface_mode_name(SurfaceMode m) {
  switch (m) {
    case SurfaceMode::kFull: return "full";
    case SurfaceMode::kSuperpixel: return "superpixel";
    case SurfaceMode::kSummary: return "summary";
  }
  return "full";
}

inline bool parse_surface_mode(std::string_view text, SurfaceMode& out) {
  if (text == "full") {
    out = SurfaceMode::kFull;
  } else if (text == "superpixel") {
    out = SurfaceMode::kSuperpixel;
  } else if (text == "summary") {
    out = SurfaceMode::kSummary;
  } else {
    return false;
  }
  return true;
}

// (source node, structure node index)
using CrossEdge = std::pair<std::uint32_t, std::uint32_t>;

struct SuperpixelLayer {
  std::vector<int> labels;  // per surface vertex
  FeatureGraph graph;       // 16 summary features per node; W1 per edge; residue_ids = majority id
  std::vector<CrossEdge> cross_edges;

  bool operator==(const SuperpixelLayer&) const = default;
};

struct MultiScaleGraph {
  std::string protein_id;
  FeatureGraph structure;
  FeatureGraph surface;
  std::vector<CrossEdge> cross_edges;  // surface vertex -> structure node
  std::optional<SuperpixelLayer> superpixels;
  std::optional<FeatureGraph> ligand;

  bool operator==(const MultiScaleGraph&) const = default;
};

}  // namespace msp
