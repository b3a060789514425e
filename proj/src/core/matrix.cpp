#include "msp/core/matrix.hpp"

#include <algorithm>
#include <string>

#include "msp/core/error.hpp"

namespace msp {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    fail(ErrorCode::kShapeMismatch, "matrix payload has " + std::to_string(data_.size()) +
                                        " values, expected " + std::to_string(rows * cols));
  }
}

void Matrix::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

}  // namespace msp
