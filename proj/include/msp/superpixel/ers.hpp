#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "msp/core/feature_graph.hpp"

namespace msp {

inline constexpr double kSimilarityFloor = 1e-6;

enum class SimilarityKind {
  kProduct,   // sum over features of |f_i * f_j|
  kGaussian,  // exp(-|f_i - f_j|^2 / (2 sigma^2))
};

struct SimilarityOptions {
  SimilarityKind kind = SimilarityKind::kProduct;
  double sigma = 1.0;
  double floor = kSimilarityFloor;
};

// Non-negative similarity of two node feature vectors, plus the floor.
double edge_similarity(std::span<const double> fi, std::span<const double> fj,
                       const SimilarityOptions& opts = {});

// Graph with similarity weights. node_weight[i] is the sum of w_ij over every
// edge of the input graph; it stays fixed while edges are selected.
struct WeightedSurface {
  std::size_t node_count = 0;
  std::vector<GraphEdge> edges;
  std::vector<double> weights;
  std::vector<double> node_weight;
  double total_weight = 0.0;
};

WeightedSurface make_weighted_surface(std::size_t node_count, std::vector<GraphEdge> edges,
                                      std::vector<double> weights);
WeightedSurface weigh_surface(const FeatureGraph& g, const SimilarityOptions& opts = {});

// mu_i = w_i / w_T.
std::vector<double> stationary_distribution(const WeightedSurface& ws);

// Selected edge set M with its random-walk and component bookkeeping. Edges
// not in M leave their weight on self-loops, so p_ii = 1 - sum_j p_ij.
class ErsState {
 public:
  explicit ErsState(const WeightedSurface& ws);
  static ErsState from_edges(const WeightedSurface& ws, std::span<const std::size_t> edge_indices);

  // Marginal gains of adding an unselected edge.
  double entropy_gain(std::size_t edge) const;
  double balance_gain(std::size_t edge) const;
  double gain(std::size_t edge, double lambda) const;

  void add(std::size_t edge);

  // Entropy rate H(M), balancing term B(M), and H + lambda * B.
  double entropy_rate() const;
  double balance() const;
  double objective(double lambda) const { return entropy_rate() + lambda * balance(); }

  std::size_t components() const { return components_; }
  bool selected(std::size_t edge) const { return selected_[edge]; }
  std::vector<std::size_t> selected_edges() const;
  bool same_component(std::uint32_t a, std::uint32_t b) const { return find(a) == find(b); }

  // Dense labels numbered by first vertex of each component.
  std::vector<int> labels() const;

  const WeightedSurface& surface() const { return *ws_; }

 private:
  std::uint32_t find(std::uint32_t v) const;
  double node_entropy_delta(std::uint32_t node, double w) const;

  const WeightedSurface* ws_;
  std::vector<double> loop_;  // self-loop mass per node
  std::vector<bool> selected_;
  mutable std::vector<std::uint32_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t components_;
};

struct Segmentation {
  std::vector<int> labels;                  // per vertex, in [0, k)
  std::vector<std::size_t> selected_edges;  // indices into the weighted edge list, in order of acceptance
  std::size_t component_count = 0;
  std::vector<double> objective_trace;      // H + lambda * B after each accepted edge
};

struct ErsOptions {
  std::size_t k = 20;
  double lambda = 0.5;
  SimilarityOptions similarity;
};

// Lazy greedy over a max-heap of possibly stale gains. Ties go to the lower
// edge index. Stops as soon as exactly k components remain.
Segmentation segment_ers(const WeightedSurface& ws, std::size_t k, double lambda);
Segmentation segment_ers(const FeatureGraph& surface, const ErsOptions& opts);

// Connected components of an edge list over n nodes.
std::size_t count_components(std::size_t n, std::span<const GraphEdge> edges);

}  // namespace msp
