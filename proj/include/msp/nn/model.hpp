#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msp/core/feature_graph.hpp"
#include "msp/core/rng.hpp"
#include "msp/multiscale/multiscale_graph.hpp"
#include "msp/nn/tensor.hpp"

namespace msp::nn {

enum class Task { kAffinity, kReaction };

std::string_view task_name(Task t);
bool parse_task(std::string_view text, Task& out);

struct EncoderConfig {
  std::size_t hidden_surface = 150;
  std::size_t hidden_structure = 200;
  std::size_t hidden_ligand = 300;
  int steps_surface = 6;
  int steps_structure = 5;
  int steps_ligand = 4;
  std::size_t mlp_hidden = 512;
  Activation activation = Activation::kRelu;
  double dropout_message = 0.0;  // after every message-passing step
  double dropout_mlp = 0.0;      // inside the prediction head
  SurfaceMode mode = SurfaceMode::kFull;
  Task task = Task::kAffinity;
  std::size_t num_classes = 384;  // reaction task only
};

struct Linear {
  Tensor weight;  // out x in
  Tensor bias;    // 1 x out

  Tensor operator()(const Tensor& x) const { return add_row(matmul_transposed(x, weight), bias); }
};

// Linear -> activation -> (dropout) -> Linear.
struct Mlp {
  Linear hidden;
  Linear output;
};

// Weights of one Weisfeiler-Lehman network. `embed` lifts the raw node
// features to the hidden width so that the self-update U1 m can be shared
// across steps; the neighbour term uses the raw features [f_u, f_v].
struct WlnParams {
  Tensor embed;         // h x d
  Tensor self_weight;   // U1, h x h
  Tensor neighbor_weight;  // U2, h x h
  Tensor update_bias;   // 1 x h
  Tensor pair_weight;   // V, h x 2d
  Tensor pair_bias;     // 1 x h
  Tensor readout_neighbor;  // W0, h x h
  Tensor readout_edge;      // W1, h x e
  Tensor readout_self;      // W2, h x h
};

struct ModelParams {
  EncoderConfig config;
  bool has_surface_wln = true;
  bool has_ligand = true;
  WlnParams surface;
  WlnParams structure;
  WlnParams ligand;
  Mlp fusion;
  Mlp head;

  // Stable (name, tensor) listing used by the optimizer and checkpoints.
  std::vector<std::pair<std::string, Tensor>> named_tensors() const;
};

// Input widths implied by the mode: surface-layer node/edge widths and the
// width of the per-residue surface summary fed to the fusion MLP.
struct LayerWidths {
  std::size_t surface_node = 0;
  std::size_t surface_edge = 0;
  std::size_t fusion_surface = 0;
};
LayerWidths layer_widths(const EncoderConfig& cfg);

ModelParams init_params(const EncoderConfig& cfg, std::uint64_t seed);
// Same shapes as init_params with every entry set to `value`.
ModelParams constant_params(const EncoderConfig& cfg, double value);

std::size_t count_parameters(const ModelParams& p);

// Message passing over an undirected graph. Returns one row per node.
Tensor wln_forward(const FeatureGraph& graph, const Tensor& node_features, const Tensor& edge_features,
                   const WlnParams& params, int steps, Activation act, double dropout_p = 0.0,
                   Rng* rng = nullptr);

// Training-time randomness; pass nullptr for deterministic inference.
struct ForwardContext {
  Rng* rng = nullptr;
};

// x_B = MLP([f_B, mean of surface embeddings mapped to the residue]).
Tensor fuse_surface_to_structure(const Tensor& surface_embeddings, const std::vector<CrossEdge>& cross_edges,
                                 const Tensor& structure_features, const Mlp& fusion, Activation act);

Tensor encode_protein(const MultiScaleGraph& g, const ModelParams& p, const ForwardContext& ctx = {});
Tensor encode_ligand(const FeatureGraph& ligand, const ModelParams& p, const ForwardContext& ctx = {});
Tensor predict_affinity(const Tensor& protein, const Tensor& ligand, const ModelParams& p,
                        const ForwardContext& ctx = {});
Tensor predict_class(const Tensor& protein, const ModelParams& p, const ForwardContext& ctx = {});

// Full forward pass for the configured task: 1x1 affinity or 1xC logits.
Tensor forward(const MultiScaleGraph& g, const ModelParams& p, const ForwardContext& ctx = {});

Tensor apply_mlp(const Mlp& mlp, const Tensor& x, Activation act, double dropout_p = 0.0, Rng* rng = nullptr);

}  // namespace msp::nn
