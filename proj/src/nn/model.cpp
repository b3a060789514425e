#include "msp/nn/model.hpp"

#include <cmath>

#include "msp/core/error.hpp"
#include "msp/nn/ligand_features.hpp"
#include "msp/structure/structure_graph.hpp"
#include "msp/surface/surface_graph.hpp"

namespace msp::nn {
namespace {

constexpr std::size_t kSummaryWidth = 4 * kSurfaceNodeFeatures;

Matrix glorot(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  for (double& v : m.data()) v = rng.uniform(-limit, limit);
  return m;
}

// Builds every tensor of the model through `make(rows, cols, is_bias)` in a
// fixed order so that seeded initialization is reproducible.
template <typename Make>
ModelParams build(const EncoderConfig& cfg, Make&& make) {
  ModelParams p;
  p.config = cfg;
  p.has_surface_wln = cfg.mode != SurfaceMode::kSummary;
  p.has_ligand = cfg.task == Task::kAffinity;
  const LayerWidths w = layer_widths(cfg);

  auto wln = [&](std::size_t d, std::size_t e, std::size_t h) {
    WlnParams q;
    q.embed = make(h, d, false);
    q.self_weight = make(h, h, false);
    q.neighbor_weight = make(h, h, false);
    q.update_bias = make(1, h, true);
    q.pair_weight = make(h, 2 * d, false);
    q.pair_bias = make(1, h, true);
    q.readout_neighbor = make(h, h, false);
    q.readout_edge = make(h, e, false);
    q.readout_self = make(h, h, false);
    return q;
  };
  auto linear = [&](std::size_t in, std::size_t out) {
    return Linear{make(out, in, false), make(1, out, true)};
  };

  if (p.has_surface_wln) p.surface = wln(w.surface_node, w.surface_edge, cfg.hidden_surface);
  const std::size_t hb = cfg.hidden_structure;
  p.fusion = Mlp{linear(kStructureNodeFeatures + w.fusion_surface, hb), linear(hb, hb)};
  p.structure = wln(hb, kStructureEdgeFeatures, hb);
  std::size_t head_in = hb;
  std::size_t head_out = cfg.num_classes;
  if (p.has_ligand) {
    p.ligand = wln(kLigandNodeFeatures, kLigandEdgeFeatures, cfg.hidden_ligand);
    head_in += cfg.hidden_ligand;
    head_out = 1;
  }
  p.head = Mlp{linear(head_in, cfg.mlp_hidden), linear(cfg.mlp_hidden, head_out)};
  return p;
}

void push_wln(std::vector<std::pair<std::string, Tensor>>& out, const std::string& prefix, const WlnParams& q) {
  out.emplace_back(prefix + ".embed", q.embed);
  out.emplace_back(prefix + ".U1", q.self_weight);
  out.emplace_back(prefix + ".U2", q.neighbor_weight);
  out.emplace_back(prefix + ".U_bias", q.update_bias);
  out.emplace_back(prefix + ".V", q.pair_weight);
  out.emplace_back(prefix + ".V_bias", q.pair_bias);
  out.emplace_back(prefix + ".W0", q.readout_neighbor);
  out.emplace_back(prefix + ".W1", q.readout_edge);
  out.emplace_back(prefix + ".W2", q.readout_self);
}

void push_mlp(std::vector<std::pair<std::string, Tensor>>& out, const std::string& prefix, const Mlp& m) {
  out.emplace_back(prefix + ".hidden.weight", m.hidden.weight);
  out.emplace_back(prefix + ".hidden.bias", m.hidden.bias);
  out.emplace_back(prefix + ".output.weight", m.output.weight);
  out.emplace_back(prefix + ".output.bias", m.output.bias);
}

Tensor graph_features(const Matrix& m) { return Tensor::constant(m); }

// Pads edge features with zero columns up to `width`.
Matrix pad_columns(const Matrix& m, std::size_t width) {
  if (m.cols() == width) return m;
  if (m.cols() > width) fail(ErrorCode::kShapeMismatch, "edge features wider than the layer expects");
  Matrix out(m.rows(), width);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

Tensor fuse(const Tensor& source, const std::vector<CrossEdge>& cross_edges, const FeatureGraph& structure,
            const Mlp& fusion, Activation act) {
  return fuse_surface_to_structure(source, cross_edges, graph_features(structure.node_features), fusion, act);
}

}  // namespace

std::string_view task_name(Task t) { return t == Task::kAffinity ? "affinity" : "reaction"; }

bool parse_task(std::string_view text, Task& out) {
  if (text == "affinity") {
    out = Task::kAffinity;
  } else if (text == "reaction") {
    out = Task::kReaction;
  } else {
    return false;
  }
  return true;
}

LayerWidths layer_widths(const EncoderConfig& cfg) {
  LayerWidths w;
  w.surface_edge = kSurfaceEdgeFeatures;
  switch (cfg.mode) {
    case SurfaceMode::kFull:
      w.surface_node = kSurfaceNodeFeatures;
      w.fusion_surface = cfg.hidden_surface;
      break;
    case SurfaceMode::kSuperpixel:
      w.surface_node = kSummaryWidth;
      w.fusion_surface = cfg.hidden_surface;
      break;
    case SurfaceMode::kSummary:
      w.surface_node = kSummaryWidth;
      w.surface_edge = 0;
      w.fusion_surface = kSummaryWidth;
      break;
  }
  return w;
}

std::vector<std::pair<std::string, Tensor>> ModelParams::named_tensors() const {
  std::vector<std::pair<std::string, Tensor>> out;
  if (has_surface_wln) push_wln(out, "surface", surface);
  push_mlp(out, "fusion", fusion);
  push_wln(out, "structure", structure);
  if (has_ligand) push_wln(out, "ligand", ligand);
  push_mlp(out, "head", head);
  return out;
}

ModelParams init_params(const EncoderConfig& cfg, std::uint64_t seed) {
  Rng rng(seed);
  return build(cfg, [&](std::size_t r, std::size_t c, bool is_bias) {
    return Tensor::parameter(is_bias ? Matrix(r, c) : glorot(r, c, rng));
  });
}

ModelParams constant_params(const EncoderConfig& cfg, double value) {
  return build(cfg, [&](std::size_t r, std::size_t c, bool) { return Tensor::parameter(Matrix(r, c, value)); });
}

std::size_t count_parameters(const ModelParams& p) {
  std::size_t n = 0;
  for (const auto& [name, t] : p.named_tensors()) n += t.rows() * t.cols();
  return n;
}

Tensor wln_forward(const FeatureGraph& graph, const Tensor& node_features, const Tensor& edge_features,
                   const WlnParams& params, int steps, Activation act, double dropout_p, Rng* rng) {
  if (steps < 1) fail(ErrorCode::kInvalidArgument, "message passing needs at least one step");
  const std::size_t n = node_features.rows();
  if (n != graph.node_count()) fail(ErrorCode::kShapeMismatch, "node feature rows do not match the graph");
  if (edge_features.rows() != graph.edge_count()) {
    fail(ErrorCode::kShapeMismatch, "edge feature rows do not match the graph");
  }

  // Both directions of every undirected edge.
  const std::size_t e = graph.edge_count();
  std::vector<std::uint32_t> src(2 * e), dst(2 * e), eid(2 * e);
  for (std::size_t i = 0; i < e; ++i) {
    const auto [a, b] = graph.edges[i];
    src[i] = a;
    dst[i] = b;
    src[e + i] = b;
    dst[e + i] = a;
    eid[i] = eid[e + i] = static_cast<std::uint32_t>(i);
  }

  // The neighbour message only depends on the input features.
  Tensor neighbor_sum;
  if (e > 0) {
    Tensor pair = concat_cols(gather_rows(node_features, src), gather_rows(node_features, dst));
    Tensor msg = activate(add_row(matmul_transposed(pair, params.pair_weight), params.pair_bias), act);
    neighbor_sum = scatter_add_rows(msg, dst, n);
  } else {
    neighbor_sum = Tensor::constant(Matrix(n, params.pair_weight.rows()));
  }
  Tensor neighbor_term = matmul_transposed(neighbor_sum, params.neighbor_weight);

  Tensor m = matmul_transposed(node_features, params.embed);
  for (int l = 0; l < steps; ++l) {
    Tensor pre = add(matmul_transposed(m, params.self_weight), neighbor_term);
    m = activate(add_row(pre, params.update_bias), act);
    m = dropout(m, dropout_p, rng);
  }

  if (e == 0) return Tensor::constant(Matrix(n, params.readout_self.rows()));
  Tensor w0 = matmul_transposed(m, params.readout_neighbor);
  Tensor w2 = matmul_transposed(m, params.readout_self);
  Tensor w1 = matmul_transposed(edge_features, params.readout_edge);
  Tensor term = mul(mul(gather_rows(w0, src), gather_rows(w1, eid)), gather_rows(w2, dst));
  return scatter_add_rows(term, dst, n);
}

Tensor apply_mlp(const Mlp& mlp, const Tensor& x, Activation act, double dropout_p, Rng* rng) {
  Tensor h = activate(mlp.hidden(x), act);
  h = dropout(h, dropout_p, rng);
  return mlp.output(h);
}

Tensor fuse_surface_to_structure(const Tensor& surface_embeddings, const std::vector<CrossEdge>& cross_edges,
                                 const Tensor& structure_features, const Mlp& fusion, Activation act) {
  const std::size_t nb = structure_features.rows();
  std::vector<std::uint32_t> from, to;
  from.reserve(cross_edges.size());
  to.reserve(cross_edges.size());
  for (const auto& [s, b] : cross_edges) {
    if (s >= surface_embeddings.rows() || b >= nb) fail(ErrorCode::kIndexOutOfRange, "cross edge out of range");
    from.push_back(s);
    to.push_back(b);
  }
  Tensor mean = scatter_mean_rows(gather_rows(surface_embeddings, from), to, nb);
  Tensor x = concat_cols(structure_features, mean);
  // Linear -> activation -> Linear, no dropout inside the fusion map.
  return apply_mlp(fusion, x, act);
}

Tensor encode_protein(const MultiScaleGraph& g, const ModelParams& p, const ForwardContext& ctx) {
  const EncoderConfig& cfg = p.config;
  if (g.structure.node_count() == 0) fail(ErrorCode::kEmptyLayer, "structure layer is empty");
  const LayerWidths w = layer_widths(cfg);

  Tensor fused;
  if (cfg.mode == SurfaceMode::kFull) {
    Tensor hs = wln_forward(g.surface, graph_features(g.surface.node_features),
                            graph_features(g.surface.edge_features), p.surface, cfg.steps_surface, cfg.activation,
                            cfg.dropout_message, ctx.rng);
    fused = fuse(hs, g.cross_edges, g.structure, p.fusion, cfg.activation);
  } else {
    if (!g.superpixels) fail(ErrorCode::kEmptyLayer, "superpixel layer missing for this encoder mode");
    const SuperpixelLayer& sp = *g.superpixels;
    Tensor summaries = graph_features(sp.graph.node_features);
    if (cfg.mode == SurfaceMode::kSuperpixel) {
      Tensor edges = graph_features(pad_columns(sp.graph.edge_features, w.surface_edge));
      Tensor hs = wln_forward(sp.graph, summaries, edges, p.surface, cfg.steps_surface, cfg.activation,
                              cfg.dropout_message, ctx.rng);
      fused = fuse(hs, sp.cross_edges, g.structure, p.fusion, cfg.activation);
    } else {
      fused = fuse(summaries, sp.cross_edges, g.structure, p.fusion, cfg.activation);
    }
  }

  Tensor hb = wln_forward(g.structure, fused, graph_features(g.structure.edge_features), p.structure,
                          cfg.steps_structure, cfg.activation, cfg.dropout_message, ctx.rng);
  return sum_rows(hb);
}

Tensor encode_ligand(const FeatureGraph& ligand, const ModelParams& p, const ForwardContext& ctx) {
  if (!p.has_ligand) fail(ErrorCode::kInvalidArgument, "model has no ligand encoder");
  if (ligand.node_count() == 0) fail(ErrorCode::kEmptyLayer, "ligand graph is empty");
  const EncoderConfig& cfg = p.config;
  Tensor h = wln_forward(ligand, graph_features(ligand.node_features), graph_features(ligand.edge_features),
                         p.ligand, cfg.steps_ligand, cfg.activation, cfg.dropout_message, ctx.rng);
  return sum_rows(h);
}

Tensor predict_affinity(const Tensor& protein, const Tensor& ligand, const ModelParams& p,
                        const ForwardContext& ctx) {
  if (!p.has_ligand) fail(ErrorCode::kInvalidArgument, "model was built for classification");
  return apply_mlp(p.head, concat_cols(protein, ligand), p.config.activation, p.config.dropout_mlp, ctx.rng);
}

Tensor predict_class(const Tensor& protein, const ModelParams& p, const ForwardContext& ctx) {
  if (p.has_ligand) fail(ErrorCode::kInvalidArgument, "model was built for affinity regression");
  return apply_mlp(p.head, protein, p.config.activation, p.config.dropout_mlp, ctx.rng);
}

Tensor forward(const MultiScaleGraph& g, const ModelParams& p, const ForwardContext& ctx) {
  Tensor c = encode_protein(g, p, ctx);
  if (p.config.task == Task::kReaction) return predict_class(c, p, ctx);
  if (!g.ligand) fail(ErrorCode::kEmptyLayer, "affinity sample without a ligand graph");
  return predict_affinity(c, encode_ligand(*g.ligand, p, ctx), p, ctx);
}

}  // namespace msp::nn
