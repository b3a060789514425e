#pragma once

#include <span>
#include <vector>

#include "msp/core/feature_graph.hpp"
#include "msp/superpixel/ers.hpp"

namespace msp {

// W1 between the empirical distributions of two samples, by integrating the
// absolute difference of their quantile functions over [0, 1].
double wasserstein_1d(std::span<const double> a, std::span<const double> b);

// Node rows hold mean, std (population), max and min of every surface
// feature, grouped by statistic: [mean f0..fd, std f0..fd, max.., min..].
// Edge rows hold one value: the sum over features of W1 between members.
struct SuperpixelGraph {
  FeatureGraph graph;
  std::vector<std::vector<std::uint32_t>> members;
};

SuperpixelGraph build_superpixel_graph(const std::vector<int>& labels, const FeatureGraph& surface);

}  // namespace msp
