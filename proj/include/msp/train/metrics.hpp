#pragma once

#include <optional>
#include <span>
#include <vector>

#include "msp/core/matrix.hpp"

namespace msp {

struct RegressionReport {
  double rmse = 0.0;
  // Empty when either input has zero variance.
  std::optional<double> pearson;
  std::optional<double> spearman;
};

double rmse(std::span<const double> preds, std::span<const double> targets);
// Throws ZeroVariance when either side is constant.
double pearson(std::span<const double> x, std::span<const double> y);
// 1-based ranks; tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> x);
double spearman(std::span<const double> x, std::span<const double> y);

RegressionReport evaluate_regression(std::span<const double> preds, std::span<const double> targets);

// Index of the largest entry of each row; ties go to the lowest index.
std::vector<int> argmax_rows(const Matrix& logits);
double evaluate_classification(const Matrix& logits, std::span<const int> labels);

}  // namespace msp
