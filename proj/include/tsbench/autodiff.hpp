// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsbench/tensor.hpp"

namespace tsbench::nn {

/// A trainable weight with its persistent gradient accumulator.
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;

  Parameter() = default;
  Parameter(std::string n, std::size_t rows, std::size_t cols)
      : name(std::move(n)), value(rows, cols), grad(rows, cols) {}

  void zero_grad() { std::fill(grad.data.begin(), grad.data.end(), 0.0); }
};

namespace detail {
Tensor k_matmul(const Tensor& a, const Tensor& b);
Tensor k_add(const Tensor& a, const Tensor& b);
Tensor k_add_row(const Tensor& a, const Tensor& bias);
Tensor k_sub(const Tensor& a, const Tensor& b);
Tensor k_mul(const Tensor& a, const Tensor& b);
Tensor k_div(const Tensor& a, const Tensor& b);
Tensor k_scale(const Tensor& a, double c);
Tensor k_add_const(const Tensor& a, double c);
Tensor k_tanh(const Tensor& a);
Tensor k_sigmoid(const Tensor& a);
Tensor k_softplus(const Tensor& a);
Tensor k_log(const Tensor& a);
Tensor k_square(const Tensor& a);
Tensor k_sum(const Tensor& a);
Tensor k_mean(const Tensor& a);
double sigmoid_scalar(double x);
double softplus_scalar(double x);
}  // namespace detail

/// Records tensor operations and runs reverse-mode accumulation. Creation
/// order is a topological order by construction (an operand must already be
/// a node), so backward() is a single reverse sweep. One Graph per training
/// batch; Parameters outlive graphs and collect gradients across them.
class Graph {
 public:
  struct Value {
    std::uint32_t idx = UINT32_MAX;
  };
  using V = Value;

  Value constant(Tensor v);
  Value parameter(Parameter& p);

  Value matmul(Value a, Value b);
  Value add(Value a, Value b);
  Value add_row(Value a, Value bias);  // bias is 1 x cols, broadcast over rows
  Value sub(Value a, Value b);
  Value mul(Value a, Value b);   // elementwise
  Value div(Value a, Value b);   // elementwise
  Value scale(Value a, double c);
  Value add_const(Value a, double c);
  Value tanh_(Value a);
  Value sigmoid(Value a);
  Value softplus(Value a);
  Value log_(Value a);
  Value square(Value a);
  Value sum(Value a);   // 1x1
  Value mean(Value a);  // 1x1

  /// Reverse sweep from a scalar loss. Gradients land in Parameter::grad
  /// (accumulated, not overwritten).
  void backward(Value loss);

  const Tensor& value(Value v) const { return nodes_[v.idx].val; }
  double scalar(Value v) const { return nodes_[v.idx].val.data[0]; }
  std::size_t node_count() const { return nodes_.size(); }

 private:
  enum class Op : std::uint8_t {
    Constant, Param, MatMul, Add, AddRow, Sub, Mul, Div, Scale, AddConst,
    Tanh, Sigmoid, Softplus, Log, Square, Sum, Mean
  };
  struct Node {
    Op op;
    bool needs_grad = false;
    std::uint32_t a = UINT32_MAX;
    std::uint32_t b = UINT32_MAX;
    double aux = 0.0;
    Parameter* param = nullptr;
    Tensor val;
    Tensor grad;  // allocated during backward
  };

  Value push(Node node);
  Value unary(Op op, Value a, Tensor val, double aux = 0.0);
  Value binary(Op op, Value a, Value b, Tensor val);

  std::vector<Node> nodes_;
};

/// Runs the same forward expressions as Graph but on plain tensors, for
/// inference paths that never need gradients.
struct EvalBackend {
  using V = Tensor;

  Tensor constant(Tensor v) { return v; }
  Tensor parameter(Parameter& p) { return p.value; }

  Tensor matmul(const Tensor& a, const Tensor& b) { return detail::k_matmul(a, b); }
  Tensor add(const Tensor& a, const Tensor& b) { return detail::k_add(a, b); }
  Tensor add_row(const Tensor& a, const Tensor& bias) { return detail::k_add_row(a, bias); }
  Tensor sub(const Tensor& a, const Tensor& b) { return detail::k_sub(a, b); }
  Tensor mul(const Tensor& a, const Tensor& b) { return detail::k_mul(a, b); }
  Tensor div(const Tensor& a, const Tensor& b) { return detail::k_div(a, b); }
  Tensor scale(const Tensor& a, double c) { return detail::k_scale(a, c); }
  Tensor add_const(const Tensor& a, double c) { return detail::k_add_const(a, c); }
  Tensor tanh_(const Tensor& a) { return detail::k_tanh(a); }
  Tensor sigmoid(const Tensor& a) { return detail::k_sigmoid(a); }
  Tensor softplus(const Tensor& a) { return detail::k_softplus(a); }
  Tensor log_(const Tensor& a) { return detail::k_log(a); }
  Tensor square(const Tensor& a) { return detail::k_square(a); }
  Tensor sum(const Tensor& a) { return detail::k_sum(a); }
  Tensor mean(const Tensor& a) { return detail::k_mean(a); }

  const Tensor& value(const Tensor& v) const { return v; }
  double scalar(const Tensor& v) const { return v.data[0]; }
};

}  // namespace tsbench::nn
