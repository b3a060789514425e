#include "msp/superpixel/superpixel_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>

#include "msp/core/error.hpp"

namespace msp {

double wasserstein_1d(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) fail(ErrorCode::kEmptySample, "wasserstein_1d needs non-empty samples");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const auto n = static_cast<std::uint64_t>(sa.size());
  const auto m = static_cast<std::uint64_t>(sb.size());
  // Quantile breakpoints i/n and j/m compared on the common grid 1/(n*m).
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  std::uint64_t t = 0;
  double total = 0.0;
  while (i < n && j < m) {
    const std::uint64_t next_a = (i + 1) * m;
    const std::uint64_t next_b = (j + 1) * n;
    const std::uint64_t next = std::min(next_a, next_b);
    total += std::abs(sa[i] - sb[j]) * static_cast<double>(next - t);
    t = next;
    if (next_a == next) ++i;
    if (next_b == next) ++j;
  }
  return total / static_cast<double>(n * m);
}

SuperpixelGraph build_superpixel_graph(const std::vector<int>& labels, const FeatureGraph& surface) {
  if (labels.size() != surface.node_count()) {
    fail(ErrorCode::kLengthMismatch, "labels do not cover the surface graph");
  }
  int k = 0;
  for (int l : labels) {
    if (l < 0) fail(ErrorCode::kInvalidArgument, "negative superpixel label");
    k = std::max(k, l + 1);
  }
  SuperpixelGraph out;
  out.members.resize(static_cast<std::size_t>(k));
  for (std::uint32_t v = 0; v < labels.size(); ++v) out.members[static_cast<std::size_t>(labels[v])].push_back(v);
  for (std::size_t s = 0; s < out.members.size(); ++s) {
    if (out.members[s].empty()) fail(ErrorCode::kInvalidArgument, "superpixel " + std::to_string(s) + " is empty");
  }

  const std::size_t d = surface.node_features.cols();
  // values[s][f] = feature f over members of s
  std::vector<std::vector<std::vector<double>>> values(out.members.size(), std::vector<std::vector<double>>(d));
  for (std::size_t s = 0; s < out.members.size(); ++s) {
    for (auto v : out.members[s]) {
      for (std::size_t f = 0; f < d; ++f) values[s][f].push_back(surface.node_features(v, f));
    }
  }

  auto& nodes = out.graph.node_features;
  nodes = Matrix(out.members.size(), 4 * d);
  for (std::size_t s = 0; s < out.members.size(); ++s) {
    for (std::size_t f = 0; f < d; ++f) {
      const auto& xs = values[s][f];
      double mean = 0.0;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(xs.size());
      double var = 0.0;
      for (double x : xs) var += (x - mean) * (x - mean);
      var /= static_cast<double>(xs.size());
      nodes(s, f) = mean;
      nodes(s, d + f) = std::sqrt(var);
      nodes(s, 2 * d + f) = *std::max_element(xs.begin(), xs.end());
      nodes(s, 3 * d + f) = *std::min_element(xs.begin(), xs.end());
    }
  }

  std::set<GraphEdge> pairs;
  for (const auto& [a, b] : surface.edges) {
    const auto la = static_cast<std::uint32_t>(labels[a]);
    const auto lb = static_cast<std::uint32_t>(labels[b]);
    if (la != lb) pairs.insert(std::minmax(la, lb));
  }
  std::vector<double> weights;
  for (const auto& [a, b] : pairs) {
    double w = 0.0;
    for (std::size_t f = 0; f < d; ++f) w += wasserstein_1d(values[a][f], values[b][f]);
    out.graph.edges.emplace_back(a, b);
    weights.push_back(w);
  }
  const std::size_t edge_count = weights.size();
  out.graph.edge_features = Matrix(edge_count, 1, std::move(weights));
  return out;
}

}  // namespace msp
