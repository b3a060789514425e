#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "msp/core/matrix.hpp"
#include "msp/core/rng.hpp"

namespace msp::nn {

struct Node {
  Matrix value;
  Matrix grad;  // allocated on first accumulation
  bool requires_grad = false;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backward;  // pushes this->grad into parents
  const char* op = "leaf";

  Matrix& grad_buffer();
};

// Handle to a node in the reverse-mode graph. Copies share the node.
class Tensor {
 public:
  Tensor() = default;

  static Tensor constant(Matrix value);
  static Tensor parameter(Matrix value);
  static Tensor scalar(double value) { return constant(Matrix(1, 1, value)); }

  bool defined() const { return node_ != nullptr; }
  const Matrix& value() const { return node_->value; }
  Matrix& mutable_value() { return node_->value; }
  // Gradient of the last backward() pass; zero-sized before one has run.
  const Matrix& grad() const { return node_->grad; }
  Matrix& grad() { return node_->grad_buffer(); }
  bool requires_grad() const { return node_ && node_->requires_grad; }
  std::size_t rows() const { return node_->value.rows(); }
  std::size_t cols() const { return node_->value.cols(); }
  double item() const;
  void zero_grad();

  const std::shared_ptr<Node>& node() const { return node_; }
  static Tensor from_node(std::shared_ptr<Node> node);

 private:
  std::shared_ptr<Node> node_;
};

// Seeds d(out)/d(out) = 1 for a 1x1 tensor and accumulates into every
// reachable node that requires a gradient.
void backward(const Tensor& out);

enum class Activation { kRelu, kLeakyRelu, kIdentity };
inline constexpr double kLeakySlope = 0.01;

Tensor matmul(const Tensor& a, const Tensor& b);
// a * w^T, the layout used for weights stored as (out x in).
Tensor matmul_transposed(const Tensor& a, const Tensor& w);
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double s);
// Adds a 1 x m row to every row of a.
Tensor add_row(const Tensor& a, const Tensor& row);
Tensor concat_cols(const Tensor& a, const Tensor& b);
Tensor relu(const Tensor& a);
Tensor leaky_relu(const Tensor& a, double slope = kLeakySlope);
Tensor activate(const Tensor& a, Activation act);
Tensor gather_rows(const Tensor& a, std::span<const std::uint32_t> index);
// out[index[i]] += a[i]; out has `out_rows` rows.
Tensor scatter_add_rows(const Tensor& a, std::span<const std::uint32_t> index, std::size_t out_rows);
// Row means per target; targets with no source rows stay zero.
Tensor scatter_mean_rows(const Tensor& a, std::span<const std::uint32_t> index, std::size_t out_rows);
Tensor sum_rows(const Tensor& a);   // 1 x cols
Tensor mean_rows(const Tensor& a);  // 1 x cols
Tensor sum_all(const Tensor& a);    // 1 x 1
// Inverted dropout; identity when p == 0 or rng is null.
Tensor dropout(const Tensor& a, double p, Rng* rng);

// Mean over all entries of (pred - target)^2.
Tensor mse_loss(const Tensor& pred, const Matrix& target);
// Mean over rows of -log softmax(logits)[label].
Tensor cross_entropy_loss(const Tensor& logits, std::span<const int> labels);

Matrix softmax_rows(const Matrix& logits);

// Throws Error(kNonFinite) naming the op when any entry is NaN or infinite.
void check_finite(const Matrix& m, const char* op);

}  // namespace msp::nn
