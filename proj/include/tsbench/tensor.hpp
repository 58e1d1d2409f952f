// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tsbench/errors.hpp"

namespace tsbench::nn {

/// Row-major value buffer with a shape. Rank is 2 throughout this library;
/// scalars are 1x1.
struct Tensor {
  std::vector<std::size_t> shape;  // {rows, cols}
  std::vector<double> data;

  Tensor() : shape{0, 0} {}
  Tensor(std::size_t rows, std::size_t cols, double fill = 0.0)
      : shape{rows, cols}, data(rows * cols, fill) {}

  static Tensor scalar(double v) {
    Tensor t(1, 1);
    t.data[0] = v;
    return t;
  }

  std::size_t rows() const { return shape[0]; }
  std::size_t cols() const { return shape[1]; }
  std::size_t size() const { return data.size(); }

  double& operator()(std::size_t r, std::size_t c) {
    return data[r * cols() + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data[r * cols() + c];
  }

  bool same_shape(const Tensor& other) const { return shape == other.shape; }
  std::string shape_str() const {
    return std::to_string(rows()) + "x" + std::to_string(cols());
  }
};

inline void require_same_shape(const Tensor& a, const Tensor& b,
                               const char* op) {
  if (!a.same_shape(b))
    throw ShapeMismatchError(std::string(op) + ": " + a.shape_str() + " vs " +
                             b.shape_str());
}

}  // namespace tsbench::nn
