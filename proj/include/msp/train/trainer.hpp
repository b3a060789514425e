#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "msp/core/matrix.hpp"
#include "msp/multiscale/multiscale_graph.hpp"
#include "msp/nn/model.hpp"

namespace msp {

struct TrainConfig {
  std::size_t hidden_surface = 150;
  std::size_t hidden_structure = 200;
  std::size_t hidden_ligand = 300;
  int steps_surface = 6;
  int steps_structure = 5;
  int steps_ligand = 4;
  std::size_t mlp_hidden = 512;
  double lr = 0.001;
  double lr_decay = 0.9;
  double plateau_threshold = 0.01;
  int patience = 5;
  double clip_norm = 10.0;
  double dropout = 0.0;      // message-passing steps
  double dropout_mlp = 0.0;  // prediction head
  int epochs = 100;
  std::uint64_t seed = 0;
  std::size_t k_superpixels = 20;
  double lambda_balance = 0.5;
  double cutoff = 10.0;
  nn::Task task = nn::Task::kAffinity;
  SurfaceMode mode = SurfaceMode::kFull;
  bool fan_out = false;
  std::size_t batch_size = 1;
  std::size_t num_classes = 384;
  // "auto" picks ReLU for affinity and LeakyReLU for reaction.
  std::string activation = "auto";
};

// Flat key=value text, '#' starts a comment. Unknown keys are rejected.
void set_config_value(TrainConfig& cfg, std::string_view key, std::string_view value);
void apply_config_text(TrainConfig& cfg, std::string_view text);
std::string format_train_config(const TrainConfig& cfg);
void validate_train_config(const TrainConfig& cfg);
nn::EncoderConfig encoder_config(const TrainConfig& cfg);

struct Sample {
  std::string id;
  MultiScaleGraph graph;
  double target = 0.0;  // pK value, or the class index for the reaction task
};

struct EpochRecord {
  int epoch = 0;
  double lr = 0.0;          // rate used during this epoch
  double train_loss = 0.0;  // mean per-sample loss over the epoch
  double train_metric = 0.0;
  double val_metric = 0.0;  // RMSE (affinity) or accuracy (reaction)
  bool lr_decayed = false;  // decay applied after this epoch
};

struct TrainResult {
  nn::ModelParams params;
  std::vector<EpochRecord> history;
};

// Sample order, initialization and dropout all derive from cfg.seed.
TrainResult train(const TrainConfig& cfg, const std::vector<Sample>& train_set, const std::vector<Sample>& val_set);

// One output row per sample (1 column for affinity, C logits for reaction).
Matrix predict(const nn::ModelParams& params, const std::vector<Sample>& samples, unsigned jobs = 1);

// RMSE for affinity, accuracy for reaction.
double task_metric(nn::Task task, const Matrix& outputs, const std::vector<Sample>& samples);

std::string history_csv(const std::vector<EpochRecord>& history);

}  // namespace msp
