#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "msp/core/matrix.hpp"

namespace msp {

using GraphEdge = std::pair<std::uint32_t, std::uint32_t>;

// Undirected attributed graph: one row of node_features per node, one row of
// edge_features per edge (stored once, a < b). residue_ids tie nodes to the
// flat residue index of the source protein; ligand graphs leave it empty.
struct FeatureGraph {
  Matrix node_features;
  std::vector<GraphEdge> edges;
  Matrix edge_features;
  std::vector<int> residue_ids;

  std::size_t node_count() const { return node_features.rows(); }
  std::size_t edge_count() const { return edges.size(); }

  bool operator==(const FeatureGraph&) const = default;
};

}  // namespace msp
