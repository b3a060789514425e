#include "msp/train/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "msp/core/error.hpp"

namespace msp {
namespace {

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) fail(ErrorCode::kLengthMismatch, std::to_string(a) + " predictions for " + std::to_string(b) + " targets");
  if (a == 0) fail(ErrorCode::kLengthMismatch, "no samples to evaluate");
}

}  // namespace

double rmse(std::span<const double> preds, std::span<const double> targets) {
  check_lengths(preds.size(), targets.size());
  double s = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) s += (preds[i] - targets[i]) * (preds[i] - targets[i]);
  return std::sqrt(s / static_cast<double>(preds.size()));
}

double pearson(std::span<const double> x, std::span<const double> y) {
  check_lengths(x.size(), y.size());
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) fail(ErrorCode::kZeroVariance, "correlation undefined for a constant vector");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_lengths(x.size(), y.size());
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

RegressionReport evaluate_regression(std::span<const double> preds, std::span<const double> targets) {
  RegressionReport r;
  r.rmse = rmse(preds, targets);
  try {
    r.pearson = pearson(preds, targets);
    r.spearman = spearman(preds, targets);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kZeroVariance) throw;
  }
  return r;
}

std::vector<int> argmax_rows(const Matrix& logits) {
  std::vector<int> out(logits.rows(), 0);
  for (std::size_t r = 0; r < logits.rows(); ++r) {
    const auto row = logits.row(r);
    std::size_t best = 0;
    for (std::size_t c = 1; c < row.size(); ++c) {
      if (row[c] > row[best]) best = c;
    }
    out[r] = static_cast<int>(best);
  }
  return out;
}

double evaluate_classification(const Matrix& logits, std::span<const int> labels) {
  check_lengths(logits.rows(), labels.size());
  const auto pred = argmax_rows(logits);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || static_cast<std::size_t>(labels[i]) >= logits.cols()) {
      fail(ErrorCode::kInvalidArgument, "class label " + std::to_string(labels[i]) + " out of range");
    }
    hits += pred[i] == labels[i] ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(labels.size());
}

}  // namespace msp
