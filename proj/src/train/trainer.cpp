#include "msp/train/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

#include "msp/core/error.hpp"
#include "msp/core/rng.hpp"
#include "msp/nn/optim.hpp"
#include "msp/train/metrics.hpp"

namespace msp {
namespace {

nn::Tensor sample_loss(nn::Task task, const nn::Tensor& out, double target) {
  if (task == nn::Task::kAffinity) return nn::mse_loss(out, Matrix(1, 1, target));
  const int label = static_cast<int>(target);
  return nn::cross_entropy_loss(out, std::span<const int>(&label, 1));
}

bool improved(nn::Task task, double metric, double best, double threshold) {
  if (task == nn::Task::kAffinity) return metric < best - threshold;
  return metric > best + threshold;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double task_metric(nn::Task task, const Matrix& outputs, const std::vector<Sample>& samples) {
  if (task == nn::Task::kAffinity) {
    std::vector<double> pred(outputs.data().begin(), outputs.data().end());
    std::vector<double> target;
    for (const auto& s : samples) target.push_back(s.target);
    return rmse(pred, target);
  }
  std::vector<int> labels;
  for (const auto& s : samples) labels.push_back(static_cast<int>(s.target));
  return evaluate_classification(outputs, labels);
}

Matrix predict(const nn::ModelParams& params, const std::vector<Sample>& samples, unsigned jobs) {
  const std::size_t width = params.config.task == nn::Task::kAffinity ? 1 : params.config.num_classes;
  Matrix out(samples.size(), width);
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(samples.size(), 1))));
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < samples.size(); i += workers) {
          const nn::Tensor y = nn::forward(samples[i].graph, params);
          std::copy(y.value().data().begin(), y.value().data().end(), out.row(i).begin());
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

TrainResult train(const TrainConfig& cfg, const std::vector<Sample>& train_set, const std::vector<Sample>& val_set) {
  validate_train_config(cfg);
  if (train_set.empty()) fail(ErrorCode::kEmptySplit, "training split is empty");
  if (val_set.empty()) fail(ErrorCode::kEmptySplit, "validation split is empty");

  TrainResult result;
  result.params = nn::init_params(encoder_config(cfg), cfg.seed);
  std::vector<nn::Tensor> params;
  for (const auto& [name, t] : result.params.named_tensors()) params.push_back(t);
  nn::AdamState adam = nn::make_adam_state(params);

  Rng order_rng(mix64(cfg.seed ^ 0x6f72646572ULL));
  Rng dropout_rng(mix64(cfg.seed ^ 0x64726f70ULL));
  const nn::ForwardContext ctx{&dropout_rng};

  double lr = cfg.lr;
  double best = cfg.task == nn::Task::kAffinity ? INFINITY : -INFINITY;
  int bad_epochs = 0;
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    order_rng.shuffle(order);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      const double inv = 1.0 / static_cast<double>(end - start);
      nn::zero_grads(params);
      for (std::size_t b = start; b < end; ++b) {
        const Sample& s = train_set[order[b]];
        const nn::Tensor loss = sample_loss(cfg.task, nn::forward(s.graph, result.params, ctx), s.target);
        loss_sum += loss.item();
        nn::backward(nn::scale(loss, inv));
      }
      nn::clip_gradients(params, cfg.clip_norm);
      nn::adam_step(params, adam, lr);
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.lr = lr;
    rec.train_loss = loss_sum / static_cast<double>(train_set.size());
    rec.train_metric = task_metric(cfg.task, predict(result.params, train_set), train_set);
    rec.val_metric = task_metric(cfg.task, predict(result.params, val_set), val_set);
    if (improved(cfg.task, rec.val_metric, best, cfg.plateau_threshold)) {
      best = rec.val_metric;
      bad_epochs = 0;
    } else if (++bad_epochs >= cfg.patience) {
      lr *= cfg.lr_decay;
      bad_epochs = 0;
      rec.lr_decayed = true;
    }
    result.history.push_back(rec);
  }
  return result;
}

std::string history_csv(const std::vector<EpochRecord>& history) {
  std::string out = "epoch,lr,train_loss,train_metric,val_metric,lr_decayed\n";
  for (const auto& r : history) {
    out += std::to_string(r.epoch) + "," + fmt(r.lr) + "," + fmt(r.train_loss) + "," + fmt(r.train_metric) + "," +
           fmt(r.val_metric) + "," + (r.lr_decayed ? "1" : "0") + "\n";
  }
  return out;
}

}  // namespace msp
