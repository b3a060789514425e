#include "msp/superpixel/ers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "msp/core/error.hpp"

namespace msp {
namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

double edge_similarity(std::span<const double> fi, std::span<const double> fj,
                       const SimilarityOptions& opts) {
  if (fi.size() != fj.size()) {
    fail(ErrorCode::kDimensionMismatch, "feature vectors of length " + std::to_string(fi.size()) +
                                            " and " + std::to_string(fj.size()));
  }
  double w = 0.0;
  if (opts.kind == SimilarityKind::kProduct) {
    for (std::size_t t = 0; t < fi.size(); ++t) w += std::abs(fi[t] * fj[t]);
  } else {
    double d2 = 0.0;
    for (std::size_t t = 0; t < fi.size(); ++t) d2 += (fi[t] - fj[t]) * (fi[t] - fj[t]);
    w = std::exp(-d2 / (2.0 * opts.sigma * opts.sigma));
  }
  return w + opts.floor;
}

WeightedSurface make_weighted_surface(std::size_t node_count, std::vector<GraphEdge> edges,
                                      std::vector<double> weights) {
  if (edges.size() != weights.size()) fail(ErrorCode::kLengthMismatch, "one weight per edge required");
  WeightedSurface ws;
  ws.node_count = node_count;
  ws.node_weight.assign(node_count, 0.0);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    if (a >= node_count || b >= node_count || a == b) {
      fail(ErrorCode::kIndexOutOfRange, "edge " + std::to_string(e) + " is invalid");
    }
    if (!(weights[e] >= 0.0)) fail(ErrorCode::kInvalidArgument, "similarity weights must be >= 0");
    ws.node_weight[a] += weights[e];
    ws.node_weight[b] += weights[e];
  }
  ws.total_weight = std::accumulate(ws.node_weight.begin(), ws.node_weight.end(), 0.0);
  ws.edges = std::move(edges);
  ws.weights = std::move(weights);
  return ws;
}

WeightedSurface weigh_surface(const FeatureGraph& g, const SimilarityOptions& opts) {
  std::vector<double> w;
  w.reserve(g.edges.size());
  for (const auto& [a, b] : g.edges) {
    w.push_back(edge_similarity(g.node_features.row(a), g.node_features.row(b), opts));
  }
  return make_weighted_surface(g.node_count(), g.edges, std::move(w));
}

std::vector<double> stationary_distribution(const WeightedSurface& ws) {
  if (!(ws.total_weight > 0.0)) fail(ErrorCode::kZeroTotalWeight, "total similarity weight is zero");
  std::vector<double> mu(ws.node_count);
  for (std::size_t i = 0; i < ws.node_count; ++i) mu[i] = ws.node_weight[i] / ws.total_weight;
  return mu;
}

ErsState::ErsState(const WeightedSurface& ws)
    : ws_(&ws),
      loop_(ws.node_weight),
      selected_(ws.edges.size(), false),
      parent_(ws.node_count),
      size_(ws.node_count, 1),
      components_(ws.node_count) {
  std::iota(parent_.begin(), parent_.end(), 0u);
}

ErsState ErsState::from_edges(const WeightedSurface& ws, std::span<const std::size_t> edge_indices) {
  ErsState s(ws);
  for (auto e : edge_indices) {
    if (!s.selected(e)) s.add(e);
  }
  return s;
}

std::uint32_t ErsState::find(std::uint32_t v) const {
  while (parent_[v] != v) {
    parent_[v] = parent_[parent_[v]];
    v = parent_[v];
  }
  return v;
}

// Change of -sum_j p_ij log p_ij at `node` when mass w moves from its
// self-loop onto a new edge, weighted by mu_node.
double ErsState::node_entropy_delta(std::uint32_t node, double w) const {
  const double wi = ws_->node_weight[node];
  if (!(wi > 0.0)) return 0.0;
  const double before = loop_[node] / wi;
  const double after = std::max(loop_[node] - w, 0.0) / wi;
  const double p = w / wi;
  const double delta = -xlogx(p) - xlogx(after) + xlogx(before);
  return (wi / ws_->total_weight) * delta;
}

double ErsState::entropy_gain(std::size_t edge) const {
  const auto [a, b] = ws_->edges[edge];
  const double w = ws_->weights[edge];
  return node_entropy_delta(a, w) + node_entropy_delta(b, w);
}

double ErsState::balance_gain(std::size_t edge) const {
  const auto [a, b] = ws_->edges[edge];
  const std::uint32_t ra = find(a);
  const std::uint32_t rb = find(b);
  if (ra == rb) return 0.0;
  const double n = static_cast<double>(ws_->node_count);
  const double pa = static_cast<double>(size_[ra]) / n;
  const double pb = static_cast<double>(size_[rb]) / n;
  // [H(sizes after) - H(sizes before)] + 1 for the lost component.
  return (-xlogx(pa + pb) + xlogx(pa) + xlogx(pb)) + 1.0;
}

double ErsState::gain(std::size_t edge, double lambda) const {
  return entropy_gain(edge) + lambda * balance_gain(edge);
}

void ErsState::add(std::size_t edge) {
  if (selected_[edge]) fail(ErrorCode::kInvalidArgument, "edge " + std::to_string(edge) + " already selected");
  const auto [a, b] = ws_->edges[edge];
  const double w = ws_->weights[edge];
  selected_[edge] = true;
  loop_[a] = std::max(loop_[a] - w, 0.0);
  loop_[b] = std::max(loop_[b] - w, 0.0);
  std::uint32_t ra = find(a);
  std::uint32_t rb = find(b);
  if (ra != rb) {
    if (size_[ra] < size_[rb] || (size_[ra] == size_[rb] && rb < ra)) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    --components_;
  }
}

double ErsState::entropy_rate() const {
  std::vector<double> h(ws_->node_count, 0.0);
  for (std::size_t e = 0; e < ws_->edges.size(); ++e) {
    if (!selected_[e]) continue;
    const auto [a, b] = ws_->edges[e];
    h[a] -= xlogx(ws_->weights[e] / ws_->node_weight[a]);
    h[b] -= xlogx(ws_->weights[e] / ws_->node_weight[b]);
  }
  double total = 0.0;
  for (std::size_t i = 0; i < ws_->node_count; ++i) {
    const double wi = ws_->node_weight[i];
    if (!(wi > 0.0)) continue;
    h[i] -= xlogx(loop_[i] / wi);
    total += (wi / ws_->total_weight) * h[i];
  }
  return total;
}

double ErsState::balance() const {
  const double n = static_cast<double>(ws_->node_count);
  double h = 0.0;
  for (std::uint32_t v = 0; v < ws_->node_count; ++v) {
    if (find(v) == v) h -= xlogx(static_cast<double>(size_[v]) / n);
  }
  return h - static_cast<double>(components_);
}

std::vector<std::size_t> ErsState::selected_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < selected_.size(); ++e) {
    if (selected_[e]) out.push_back(e);
  }
  return out;
}

std::vector<int> ErsState::labels() const {
  std::vector<int> root_label(ws_->node_count, -1);
  std::vector<int> labels(ws_->node_count);
  int next = 0;
  for (std::uint32_t v = 0; v < ws_->node_count; ++v) {
    const auto r = find(v);
    if (root_label[r] < 0) root_label[r] = next++;
    labels[v] = root_label[r];
  }
  return labels;
}

std::size_t count_components(std::size_t n, std::span<const GraphEdge> edges) {
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t comps = n;
  for (const auto& [a, b] : edges) {
    const auto ra = find(a);
    const auto rb = find(b);
    if (ra != rb) {
      parent[std::max(ra, rb)] = std::min(ra, rb);
      --comps;
    }
  }
  return comps;
}

Segmentation segment_ers(const WeightedSurface& ws, std::size_t k, double lambda) {
  if (k < 1 || k > ws.node_count) {
    fail(ErrorCode::kInvalidArgument, "k=" + std::to_string(k) + " outside [1, " +
                                          std::to_string(ws.node_count) + "]");
  }
  if (!(lambda >= 0.0)) fail(ErrorCode::kInvalidArgument, "lambda must be >= 0");
  const std::size_t base = count_components(ws.node_count, ws.edges);
  if (base > k) {
    fail(ErrorCode::kDisconnectedInput, "graph has " + std::to_string(base) +
                                            " connected components, more than k=" + std::to_string(k));
  }

  ErsState state(ws);
  Segmentation seg;
  // Heap key (gain, -index): larger gain first, then lower index.
  struct Entry {
    double gain;
    std::size_t edge;
    bool operator<(const Entry& o) const { return gain < o.gain || (gain == o.gain && edge > o.edge); }
  };
  std::priority_queue<Entry> heap;
  for (std::size_t e = 0; e < ws.edges.size(); ++e) heap.push({state.gain(e, lambda), e});

  while (state.components() > k && !heap.empty()) {
    Entry top = heap.top();
    heap.pop();
    top.gain = state.gain(top.edge, lambda);
    if (!heap.empty() && top < heap.top()) {
      heap.push(top);
      continue;
    }
    state.add(top.edge);
    seg.selected_edges.push_back(top.edge);
    seg.objective_trace.push_back(state.objective(lambda));
  }
  seg.labels = state.labels();
  seg.component_count = state.components();
  return seg;
}

Segmentation segment_ers(const FeatureGraph& surface, const ErsOptions& opts) {
  const auto ws = weigh_surface(surface, opts.similarity);
  if (!(ws.total_weight > 0.0) && surface.node_count() > opts.k) {
    fail(ErrorCode::kZeroTotalWeight, "surface graph has no weighted edges");
  }
  return segment_ers(ws, opts.k, opts.lambda);
}

}  // namespace msp
