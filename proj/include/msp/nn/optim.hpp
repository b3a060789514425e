#pragma once

#include <cstdint>
#include <vector>

#include "msp/core/matrix.hpp"
#include "msp/nn/tensor.hpp"

namespace msp::nn {

struct AdamOptions {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::vector<Matrix> m;
  std::vector<Matrix> v;
  std::int64_t t = 0;
};

AdamState make_adam_state(const std::vector<Tensor>& params);

// Bias-corrected Adam update. Parameters without a gradient buffer count as
// having a zero gradient.
void adam_step(std::vector<Tensor>& params, AdamState& state, double lr, const AdamOptions& opts = {});

double global_grad_norm(const std::vector<Tensor>& params);

// Rescales every gradient so the global norm is at most `max_norm`.
// Returns the norm before clipping.
double clip_gradients(std::vector<Tensor>& params, double max_norm);

void zero_grads(std::vector<Tensor>& params);

}  // namespace msp::nn
