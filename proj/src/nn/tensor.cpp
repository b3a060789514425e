#include "msp/nn/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "msp/core/error.hpp"

namespace msp::nn {
namespace {

using NodePtr = std::shared_ptr<Node>;

std::string shape_of(const Matrix& m) {
  return "(" + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")";
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::kShapeMismatch, std::string(op) + ": " + shape_of(a.value()) + " vs " + shape_of(b.value()));
  }
}

Tensor make(Matrix value, std::vector<NodePtr> parents, const char* op,
            std::function<void(Node&)> backward) {
  check_finite(value, op);
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  node->op = op;
  for (const auto& p : parents) node->requires_grad = node->requires_grad || p->requires_grad;
  if (node->requires_grad) {
    node->parents = std::move(parents);
    node->backward = std::move(backward);
  }
  return Tensor::from_node(std::move(node));
}

// out += a * b (n x k times k x m)
void gemm_nn(const Matrix& a, const Matrix& b, Matrix& out) {
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  const double* pa = a.data().data();
  const double* pb = b.data().data();
  double* po = out.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double av = pa[i * k + p];
      if (av == 0.0) continue;
      const double* brow = pb + p * m;
      double* orow = po + i * m;
      for (std::size_t j = 0; j < m; ++j) orow[j] += av * brow[j];
    }
  }
}

// out += a * b^T (n x k times (m x k)^T)
void gemm_nt(const Matrix& a, const Matrix& b, Matrix& out) {
  const std::size_t n = a.rows(), k = a.cols(), m = b.rows();
  const double* pa = a.data().data();
  const double* pb = b.data().data();
  double* po = out.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = pa + i * k;
    for (std::size_t j = 0; j < m; ++j) {
      const double* brow = pb + j * k;
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += arow[p] * brow[p];
      po[i * m + j] += s;
    }
  }
}

// out += a^T * b ((n x k)^T times n x m)
void gemm_tn(const Matrix& a, const Matrix& b, Matrix& out) {
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  const double* pa = a.data().data();
  const double* pb = b.data().data();
  double* po = out.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double av = pa[i * k + p];
      if (av == 0.0) continue;
      const double* brow = pb + i * m;
      double* orow = po + p * m;
      for (std::size_t j = 0; j < m; ++j) orow[j] += av * brow[j];
    }
  }
}

void accumulate(const NodePtr& target, const Matrix& delta) {
  if (!target->requires_grad) return;
  auto& g = target->grad_buffer();
  for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] += delta.data()[i];
}

}  // namespace

Matrix& Node::grad_buffer() {
  if (grad.rows() != value.rows() || grad.cols() != value.cols()) grad = Matrix(value.rows(), value.cols());
  return grad;
}

Tensor Tensor::constant(Matrix value) {
  check_finite(value, "constant");
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  return from_node(std::move(node));
}

Tensor Tensor::parameter(Matrix value) {
  check_finite(value, "parameter");
  auto node = std::make_shared<Node>();
  node->value = std::move(value);
  node->requires_grad = true;
  node->op = "parameter";
  return from_node(std::move(node));
}

Tensor Tensor::from_node(std::shared_ptr<Node> node) {
  Tensor t;
  t.node_ = std::move(node);
  return t;
}

double Tensor::item() const {
  if (rows() != 1 || cols() != 1) fail(ErrorCode::kShapeMismatch, "item() on " + shape_of(value()));
  return value()(0, 0);
}

void Tensor::zero_grad() {
  if (node_) node_->grad = Matrix(node_->value.rows(), node_->value.cols());
}

void check_finite(const Matrix& m, const char* op) {
  for (double v : m.data()) {
    if (!std::isfinite(v)) fail(ErrorCode::kNonFinite, std::string("non-finite value produced by ") + op);
  }
}

void backward(const Tensor& out) {
  if (out.rows() != 1 || out.cols() != 1) fail(ErrorCode::kShapeMismatch, "backward() needs a 1x1 tensor");
  if (!out.requires_grad()) return;

  // Iterative post-order DFS gives a topological order.
  std::vector<Node*> order;
  std::unordered_set<Node*> visited;
  std::vector<std::pair<Node*, std::size_t>> stack{{out.node().get(), 0}};
  visited.insert(out.node().get());
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    if (next < node->parents.size()) {
      Node* parent = node->parents[next++].get();
      if (parent->requires_grad && visited.insert(parent).second) stack.push_back({parent, 0});
    } else {
      order.push_back(node);
      stack.pop_back();
    }
  }
  // Intermediate gradients start from zero; leaves keep accumulating.
  for (Node* n : order) {
    if (!n->parents.empty()) n->grad = Matrix(n->value.rows(), n->value.cols());
  }
  out.node()->grad_buffer()(0, 0) += 1.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Node* n = *it;
    if (n->backward) {
      n->grad_buffer();
      check_finite(n->grad, n->op);
      n->backward(*n);
    }
  }
}

Tensor matmul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) {
    fail(ErrorCode::kShapeMismatch, "matmul: " + shape_of(a.value()) + " x " + shape_of(b.value()));
  }
  Matrix out(a.rows(), b.cols());
  gemm_nn(a.value(), b.value(), out);
  auto pa = a.node();
  auto pb = b.node();
  return make(std::move(out), {pa, pb}, "matmul", [pa, pb](Node& self) {
    if (pa->requires_grad) gemm_nt(self.grad, pb->value, pa->grad_buffer());
    if (pb->requires_grad) gemm_tn(pa->value, self.grad, pb->grad_buffer());
  });
}

Tensor matmul_transposed(const Tensor& a, const Tensor& w) {
  if (a.cols() != w.cols()) {
    fail(ErrorCode::kShapeMismatch, "matmul_transposed: " + shape_of(a.value()) + " x " +
                                        shape_of(w.value()) + "^T");
  }
  Matrix out(a.rows(), w.rows());
  gemm_nt(a.value(), w.value(), out);
  auto pa = a.node();
  auto pw = w.node();
  return make(std::move(out), {pa, pw}, "matmul_transposed", [pa, pw](Node& self) {
    if (pa->requires_grad) gemm_nn(self.grad, pw->value, pa->grad_buffer());
    if (pw->requires_grad) gemm_tn(self.grad, pa->value, pw->grad_buffer());
  });
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  Matrix out = a.value();
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += b.value().data()[i];
  auto pa = a.node();
  auto pb = b.node();
  return make(std::move(out), {pa, pb}, "add", [pa, pb](Node& self) {
    accumulate(pa, self.grad);
    accumulate(pb, self.grad);
  });
}

Tensor sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  Matrix out = a.value();
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] -= b.value().data()[i];
  auto pa = a.node();
  auto pb = b.node();
  return make(std::move(out), {pa, pb}, "sub", [pa, pb](Node& self) {
    accumulate(pa, self.grad);
    if (pb->requires_grad) {
      auto& g = pb->grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] -= self.grad.data()[i];
    }
  });
}

Tensor mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  Matrix out = a.value();
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= b.value().data()[i];
  auto pa = a.node();
  auto pb = b.node();
  return make(std::move(out), {pa, pb}, "mul", [pa, pb](Node& self) {
    if (pa->requires_grad) {
      auto& g = pa->grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] += self.grad.data()[i] * pb->value.data()[i];
    }
    if (pb->requires_grad) {
      auto& g = pb->grad_buffer();
      for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] += self.grad.data()[i] * pa->value.data()[i];
    }
  });
}

Tensor scale(const Tensor& a, double s) {
  Matrix out = a.value();
  for (double& v : out.data()) v *= s;
  auto pa = a.node();
  return make(std::move(out), {pa}, "scale", [pa, s](Node& self) {
    auto& g = pa->grad_buffer();
    for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] += s * self.grad.data()[i];
  });
}

Tensor add_row(const Tensor& a, const Tensor& row) {
  if (row.rows() != 1 || row.cols() != a.cols()) {
    fail(ErrorCode::kShapeMismatch, "add_row: " + shape_of(a.value()) + " + " + shape_of(row.value()));
  }
  Matrix out = a.value();
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) += row.value()(0, j);
  }
  auto pa = a.node();
  auto pr = row.node();
  return make(std::move(out), {pa, pr}, "add_row", [pa, pr](Node& self) {
    accumulate(pa, self.grad);
    if (pr->requires_grad) {
      auto& g = pr->grad_buffer();
      for (std::size_t i = 0; i < self.grad.rows(); ++i) {
        for (std::size_t j = 0; j < self.grad.cols(); ++j) g(0, j) += self.grad(i, j);
      }
    }
  });
}

Tensor concat_cols(const Tensor& a, const Tensor& b) {
  if (a.rows() != b.rows()) {
    fail(ErrorCode::kShapeMismatch, "concat_cols: " + shape_of(a.value()) + " | " + shape_of(b.value()));
  }
  const std::size_t ca = a.cols();
  const std::size_t cb = b.cols();
  Matrix out(a.rows(), ca + cb);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::copy(a.value().row(i).begin(), a.value().row(i).end(), out.row(i).begin());
    std::copy(b.value().row(i).begin(), b.value().row(i).end(), out.row(i).begin() + static_cast<std::ptrdiff_t>(ca));
  }
  auto pa = a.node();
  auto pb = b.node();
  return make(std::move(out), {pa, pb}, "concat_cols", [pa, pb, ca, cb](Node& self) {
    for (std::size_t i = 0; i < self.grad.rows(); ++i) {
      if (pa->requires_grad) {
        auto& g = pa->grad_buffer();
        for (std::size_t j = 0; j < ca; ++j) g(i, j) += self.grad(i, j);
      }
      if (pb->requires_grad) {
        auto& g = pb->grad_buffer();
        for (std::size_t j = 0; j < cb; ++j) g(i, j) += self.grad(i, ca + j);
      }
    }
  });
}

Tensor leaky_relu(const Tensor& a, double slope) {
  Matrix out = a.value();
  for (double& v : out.data()) v = v > 0.0 ? v : slope * v;
  auto pa = a.node();
  return make(std::move(out), {pa}, slope == 0.0 ? "relu" : "leaky_relu", [pa, slope](Node& self) {
    auto& g = pa->grad_buffer();
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.data()[i] += self.grad.data()[i] * (pa->value.data()[i] > 0.0 ? 1.0 : slope);
    }
  });
}

Tensor relu(const Tensor& a) { return leaky_relu(a, 0.0); }

Tensor activate(const Tensor& a, Activation act) {
  switch (act) {
    case Activation::kRelu: return relu(a);
    case Activation::kLeakyRelu: return leaky_relu(a);
    case Activation::kIdentity: return a;
  }
  return a;
}

Tensor gather_rows(const Tensor& a, std::span<const std::uint32_t> index) {
  Matrix out(index.size(), a.cols());
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= a.rows()) fail(ErrorCode::kIndexOutOfRange, "gather_rows index " + std::to_string(index[i]));
    std::copy(a.value().row(index[i]).begin(), a.value().row(index[i]).end(), out.row(i).begin());
  }
  auto pa = a.node();
  std::vector<std::uint32_t> idx(index.begin(), index.end());
  return make(std::move(out), {pa}, "gather_rows", [pa, idx = std::move(idx)](Node& self) {
    auto& g = pa->grad_buffer();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto src = self.grad.row(i);
      auto dst = g.row(idx[i]);
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
    }
  });
}

Tensor scatter_add_rows(const Tensor& a, std::span<const std::uint32_t> index, std::size_t out_rows) {
  if (index.size() != a.rows()) fail(ErrorCode::kShapeMismatch, "scatter_add_rows: index length != rows");
  Matrix out(out_rows, a.cols());
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] >= out_rows) fail(ErrorCode::kIndexOutOfRange, "scatter index " + std::to_string(index[i]));
    auto src = a.value().row(i);
    auto dst = out.row(index[i]);
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
  }
  auto pa = a.node();
  std::vector<std::uint32_t> idx(index.begin(), index.end());
  return make(std::move(out), {pa}, "scatter_add_rows", [pa, idx = std::move(idx)](Node& self) {
    auto& g = pa->grad_buffer();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      auto src = self.grad.row(idx[i]);
      auto dst = g.row(i);
      for (std::size_t j = 0; j < dst.size(); ++j) dst[j] += src[j];
    }
  });
}

Tensor scatter_mean_rows(const Tensor& a, std::span<const std::uint32_t> index, std::size_t out_rows) {
  std::vector<double> count(out_rows, 0.0);
  for (auto i : index) {
    if (i >= out_rows) fail(ErrorCode::kIndexOutOfRange, "scatter index " + std::to_string(i));
    count[i] += 1.0;
  }
  Matrix weights(a.rows(), 1);
  for (std::size_t i = 0; i < index.size(); ++i) weights(i, 0) = 1.0 / count[index[i]];
  // Row-wise weighting folded into the sum keeps a single backward rule.
  Matrix scaled_value = a.value();
  for (std::size_t i = 0; i < scaled_value.rows(); ++i) {
    for (double& v : scaled_value.row(i)) v *= weights(i, 0);
  }
  auto pa = a.node();
  auto weighted = make(std::move(scaled_value), {pa}, "row_weight", [pa, weights](Node& self) {
    auto& g = pa->grad_buffer();
    for (std::size_t i = 0; i < g.rows(); ++i) {
      for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) += self.grad(i, j) * weights(i, 0);
    }
  });
  return scatter_add_rows(weighted, index, out_rows);
}

Tensor sum_rows(const Tensor& a) {
  Matrix out(1, a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(0, j) += a.value()(i, j);
  }
  auto pa = a.node();
  return make(std::move(out), {pa}, "sum_rows", [pa](Node& self) {
    auto& g = pa->grad_buffer();
    for (std::size_t i = 0; i < g.rows(); ++i) {
      for (std::size_t j = 0; j < g.cols(); ++j) g(i, j) += self.grad(0, j);
    }
  });
}

Tensor mean_rows(const Tensor& a) {
  if (a.rows() == 0) fail(ErrorCode::kShapeMismatch, "mean_rows of an empty tensor");
  return scale(sum_rows(a), 1.0 / static_cast<double>(a.rows()));
}

Tensor sum_all(const Tensor& a) {
  double s = 0.0;
  for (double v : a.value().data()) s += v;
  auto pa = a.node();
  return make(Matrix(1, 1, s), {pa}, "sum_all", [pa](Node& self) {
    auto& g = pa->grad_buffer();
    for (double& v : g.data()) v += self.grad(0, 0);
  });
}

Tensor dropout(const Tensor& a, double p, Rng* rng) {
  if (p <= 0.0 || rng == nullptr) return a;
  if (p >= 1.0) fail(ErrorCode::kInvalidArgument, "dropout probability must be < 1");
  Matrix mask(a.rows(), a.cols());
  for (double& m : mask.data()) m = rng->uniform() < p ? 0.0 : 1.0 / (1.0 - p);
  Matrix out = a.value();
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= mask.data()[i];
  auto pa = a.node();
  return make(std::move(out), {pa}, "dropout", [pa, mask = std::move(mask)](Node& self) {
    auto& g = pa->grad_buffer();
    for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] += self.grad.data()[i] * mask.data()[i];
  });
}

Tensor mse_loss(const Tensor& pred, const Matrix& target) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols()) {
    fail(ErrorCode::kShapeMismatch, "mse_loss: " + shape_of(pred.value()) + " vs " + shape_of(target));
  }
  const auto n = static_cast<double>(target.size());
  double s = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double d = pred.value().data()[i] - target.data()[i];
    s += d * d;
  }
  auto pp = pred.node();
  return make(Matrix(1, 1, s / n), {pp}, "mse_loss", [pp, target, n](Node& self) {
    auto& g = pp->grad_buffer();
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.data()[i] += self.grad(0, 0) * 2.0 * (pp->value.data()[i] - target.data()[i]) / n;
    }
  });
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix out = logits;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto row = out.row(i);
    const double mx = *std::max_element(row.begin(), row.end());
    double z = 0.0;
    for (double& v : row) {
      v = std::exp(v - mx);
      z += v;
    }
    for (double& v : row) v /= z;
  }
  return out;
}

Tensor cross_entropy_loss(const Tensor& logits, std::span<const int> labels) {
  if (labels.size() != logits.rows()) fail(ErrorCode::kShapeMismatch, "cross_entropy_loss: one label per row");
  const Matrix probs = softmax_rows(logits.value());
  double loss = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= logits.cols()) {
      fail(ErrorCode::kIndexOutOfRange, "class label " + std::to_string(labels[i]));
    }
    const auto row = logits.value().row(i);
    const double mx = *std::max_element(row.begin(), row.end());
    double z = 0.0;
    for (double v : row) z += std::exp(v - mx);
    loss += (mx + std::log(z)) - row[static_cast<std::size_t>(labels[i])];
  }
  const auto n = static_cast<double>(labels.size());
  auto pl = logits.node();
  std::vector<int> lab(labels.begin(), labels.end());
  return make(Matrix(1, 1, loss / n), {pl}, "cross_entropy_loss", [pl, probs, lab, n](Node& self) {
    auto& g = pl->grad_buffer();
    for (std::size_t i = 0; i < g.rows(); ++i) {
      for (std::size_t j = 0; j < g.cols(); ++j) {
        const double target = static_cast<int>(j) == lab[i] ? 1.0 : 0.0;
        g(i, j) += self.grad(0, 0) * (probs(i, j) - target) / n;
      }
    }
  });
}

}  // namespace msp::nn
