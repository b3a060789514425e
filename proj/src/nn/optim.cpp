#include "msp/nn/optim.hpp"

#include <cmath>
#include <utility>

#include "msp/core/error.hpp"

namespace msp::nn {

AdamState make_adam_state(const std::vector<Tensor>& params) {
  AdamState s;
  for (const auto& p : params) {
    s.m.emplace_back(p.rows(), p.cols());
    s.v.emplace_back(p.rows(), p.cols());
  }
  return s;
}

void adam_step(std::vector<Tensor>& params, AdamState& state, double lr, const AdamOptions& opts) {
  if (state.m.size() != params.size()) fail(ErrorCode::kShapeMismatch, "optimizer state does not match parameters");
  ++state.t;
  const double c1 = 1.0 - std::pow(opts.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(opts.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    Tensor& p = params[i];
    const Matrix& g = std::as_const(p).grad();
    if (g.size() == 0) continue;
    Matrix& m = state.m[i];
    Matrix& v = state.v[i];
    Matrix& w = p.mutable_value();
    for (std::size_t k = 0; k < w.size(); ++k) {
      const double gk = g.data()[k];
      m.data()[k] = opts.beta1 * m.data()[k] + (1.0 - opts.beta1) * gk;
      v.data()[k] = opts.beta2 * v.data()[k] + (1.0 - opts.beta2) * gk * gk;
      const double mh = m.data()[k] / c1;
      const double vh = v.data()[k] / c2;
      w.data()[k] -= lr * mh / (std::sqrt(vh) + opts.eps);
    }
    check_finite(w, "adam_step");
  }
}

double global_grad_norm(const std::vector<Tensor>& params) {
  double sq = 0.0;
  for (const auto& p : params) {
    for (double g : p.grad().data()) sq += g * g;
  }
  return std::sqrt(sq);
}

double clip_gradients(std::vector<Tensor>& params, double max_norm) {
  const double norm = global_grad_norm(params);
  if (norm > max_norm && norm > 0.0) {
    const double s = max_norm / norm;
    for (auto& p : params) {
      if (std::as_const(p).grad().size() == 0) continue;
      for (double& g : p.grad().data()) g *= s;
    }
  }
  return norm;
}

void zero_grads(std::vector<Tensor>& params) {
  for (auto& p : params) p.zero_grad();
}

}  // namespace msp::nn
