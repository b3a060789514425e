#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "msp/io/dataset.hpp"
#include "msp/multiscale/multiscale_graph.hpp"

namespace msp {

struct PreprocessOptions {
  double cutoff = 10.0;
  std::size_t target_faces = 0;  // 0 keeps the mesh as given
};

struct PreprocessResult {
  MultiScaleGraph graph;
  std::vector<std::string> warnings;
};

// Optional sidecars next to the inputs: <mesh>.atoms (vertex to atom map),
// <mesh>.elec (per-vertex charge), <pdb>.ss (secondary structure letters).
PreprocessResult preprocess_record(const DatasetRecord& rec, const PreprocessOptions& opts = {});

}  // namespace msp
