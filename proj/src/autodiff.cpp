// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/autodiff.hpp"

#include <cassert>
#include <cmath>

namespace tsbench::nn {

namespace detail {

double sigmoid_scalar(double x) {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return 1.0 / (1.0 + e);
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double softplus_scalar(double x) {
  if (x > 30.0) return x;
  if (x < -30.0) return std::exp(x);
  return std::log1p(std::exp(x));
}

Tensor k_matmul(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows())
    throw ShapeMismatchError("matmul: " + a.shape_str() + " * " + b.shape_str());
  Tensor out(a.rows(), b.cols());
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = &a.data[i * k];
    double* orow = &out.data[i * m];
    for (std::size_t kk = 0; kk < k; ++kk) {
      const double av = arow[kk];
      if (av == 0.0) continue;
      const double* brow = &b.data[kk * m];
      for (std::size_t j = 0; j < m; ++j) orow[j] += av * brow[j];
    }
  }
  return out;
}

Tensor k_add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  Tensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data[i] += b.data[i];
  return out;
}

Tensor k_add_row(const Tensor& a, const Tensor& bias) {
  if (bias.rows() != 1 || bias.cols() != a.cols())
    throw ShapeMismatchError("add_row: " + a.shape_str() + " + " + bias.shape_str());
  Tensor out = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) += bias.data[c];
  return out;
}

Tensor k_sub(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "sub");
  Tensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data[i] -= b.data[i];
  return out;
}

Tensor k_mul(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "mul");
  Tensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data[i] *= b.data[i];
  return out;
}

Tensor k_div(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "div");
  Tensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data[i] /= b.data[i];
  return out;
}

Tensor k_scale(const Tensor& a, double c) {
  Tensor out = a;
  for (double& v : out.data) v *= c;
  return out;
}

Tensor k_add_const(const Tensor& a, double c) {
  Tensor out = a;
  for (double& v : out.data) v += c;
  return out;
}

Tensor k_tanh(const Tensor& a) {
  Tensor out = a;
  for (double& v : out.data) v = std::tanh(v);
  return out;
}

Tensor k_sigmoid(const Tensor& a) {
  Tensor out = a;
  for (double& v : out.data) v = sigmoid_scalar(v);
  return out;
}

Tensor k_softplus(const Tensor& a) {
  Tensor out = a;
  for (double& v : out.data) v = softplus_scalar(v);
  return out;
}

Tensor k_log(const Tensor& a) {
  Tensor out = a;
  for (double& v : out.data) v = std::log(v);
  return out;
}

Tensor k_square(const Tensor& a) {
  Tensor out = a;
  for (double& v : out.data) v *= v;
  return out;
}

Tensor k_sum(const Tensor& a) {
  double s = 0.0;
  for (double v : a.data) s += v;
  return Tensor::scalar(s);
}

Tensor k_mean(const Tensor& a) {
  double s = 0.0;
  for (double v : a.data) s += v;
  return Tensor::scalar(s / static_cast<double>(a.size()));
}

}  // namespace detail

Graph::Value Graph::push(Node node) {
  nodes_.push_back(std::move(node));
  return Value{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

Graph::Value Graph::constant(Tensor v) {
  Node n;
  n.op = Op::Constant;
  n.val = std::move(v);
  return push(std::move(n));
}

Graph::Value Graph::parameter(Parameter& p) {
  Node n;
  n.op = Op::Param;
  n.needs_grad = true;
  n.param = &p;
  n.val = p.value;
  return push(std::move(n));
}

Graph::Value Graph::unary(Op op, Value a, Tensor val, double aux) {
  assert(a.idx < nodes_.size());
  Node n;
  n.op = op;
  n.a = a.idx;
  n.aux = aux;
  n.needs_grad = nodes_[a.idx].needs_grad;
  n.val = std::move(val);
  return push(std::move(n));
}

Graph::Value Graph::binary(Op op, Value a, Value b, Tensor val) {
  assert(a.idx < nodes_.size() && b.idx < nodes_.size());
  Node n;
  n.op = op;
  n.a = a.idx;
  n.b = b.idx;
  n.needs_grad = nodes_[a.idx].needs_grad || nodes_[b.idx].needs_grad;
  n.val = std::move(val);
  return push(std::move(n));
}

Graph::Value Graph::matmul(Value a, Value b) {
  return binary(Op::MatMul, a, b, detail::k_matmul(nodes_[a.idx].val, nodes_[b.idx].val));
}
Graph::Value Graph::add(Value a, Value b) {
  return binary(Op::Add, a, b, detail::k_add(nodes_[a.idx].val, nodes_[b.idx].val));
}
Graph::Value Graph::add_row(Value a, Value bias) {
  return binary(Op::AddRow, a, bias,
                detail::k_add_row(nodes_[a.idx].val, nodes_[bias.idx].val));
}
Graph::Value Graph::sub(Value a, Value b) {
  return binary(Op::Sub, a, b, detail::k_sub(nodes_[a.idx].val, nodes_[b.idx].val));
}
Graph::Value Graph::mul(Value a, Value b) {
  return binary(Op::Mul, a, b, detail::k_mul(nodes_[a.idx].val, nodes_[b.idx].val));
}
Graph::Value Graph::div(Value a, Value b) {
  return binary(Op::Div, a, b, detail::k_div(nodes_[a.idx].val, nodes_[b.idx].val));
}
Graph::Value Graph::scale(Value a, double c) {
  return unary(Op::Scale, a, detail::k_scale(nodes_[a.idx].val, c), c);
}
Graph::Value Graph::add_const(Value a, double c) {
  return unary(Op::AddConst, a, detail::k_add_const(nodes_[a.idx].val, c), c);
}
Graph::Value Graph::tanh_(Value a) {
  return unary(Op::Tanh, a, detail::k_tanh(nodes_[a.idx].val));
}
Graph::Value Graph::sigmoid(Value a) {
  return unary(Op::Sigmoid, a, detail::k_sigmoid(nodes_[a.idx].val));
}
Graph::Value Graph::softplus(Value a) {
  return unary(Op::Softplus, a, detail::k_softplus(nodes_[a.idx].val));
}
Graph::Value Graph::log_(Value a) {
  return unary(Op::Log, a, detail::k_log(nodes_[a.idx].val));
}
Graph::Value Graph::square(Value a) {
  return unary(Op::Square, a, detail::k_square(nodes_[a.idx].val));
}
Graph::Value Graph::sum(Value a) {
  return unary(Op::Sum, a, detail::k_sum(nodes_[a.idx].val));
}
Graph::Value Graph::mean(Value a) {
  return unary(Op::Mean, a, detail::k_mean(nodes_[a.idx].val));
}

void Graph::backward(Value loss) {
  Node& top = nodes_[loss.idx];
  if (top.val.size() != 1)
    throw ShapeMismatchError("backward: loss must be a scalar, got " +
                             top.val.shape_str());

  for (Node& n : nodes_) n.grad = Tensor();
  top.grad = Tensor::scalar(1.0);

  auto grad_of = [&](std::uint32_t idx) -> Tensor& {
    Node& n = nodes_[idx];
    if (n.grad.size() == 0) n.grad = Tensor(n.val.rows(), n.val.cols());
    return n.grad;
  };
  auto wants = [&](std::uint32_t idx) { return nodes_[idx].needs_grad; };

  for (std::size_t raw = loss.idx + 1; raw-- > 0;) {
    Node& n = nodes_[raw];
    if (!n.needs_grad || n.grad.size() == 0) continue;
    const Tensor& g = n.grad;

    switch (n.op) {
      case Op::Constant:
        break;
      case Op::Param:
        for (std::size_t j = 0; j < g.size(); ++j) n.param->grad.data[j] += g.data[j];
        break;
      case Op::MatMul: {
        const Tensor& a = nodes_[n.a].val;
        const Tensor& b = nodes_[n.b].val;
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);  // dA += g * B^T
          for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) {
              const double gv = g(i, j);
              if (gv == 0.0) continue;
              for (std::size_t kk = 0; kk < a.cols(); ++kk)
                da(i, kk) += gv * b(kk, j);
            }
        }
        if (wants(n.b)) {
          Tensor& db = grad_of(n.b);  // dB += A^T * g
          for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t kk = 0; kk < a.cols(); ++kk) {
              const double av = a(i, kk);
              if (av == 0.0) continue;
              for (std::size_t j = 0; j < b.cols(); ++j)
                db(kk, j) += av * g(i, j);
            }
        }
        break;
      }
      case Op::Add: {
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          for (std::size_t j = 0; j < g.size(); ++j) da.data[j] += g.data[j];
        }
        if (wants(n.b)) {
          Tensor& db = grad_of(n.b);
          for (std::size_t j = 0; j < g.size(); ++j) db.data[j] += g.data[j];
        }
        break;
      }
      case Op::AddRow: {
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          for (std::size_t j = 0; j < g.size(); ++j) da.data[j] += g.data[j];
        }
        if (wants(n.b)) {
          Tensor& db = grad_of(n.b);
          for (std::size_t r = 0; r < g.rows(); ++r)
            for (std::size_t c = 0; c < g.cols(); ++c) db.data[c] += g(r, c);
        }
        break;
      }
      case Op::Sub: {
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          for (std::size_t j = 0; j < g.size(); ++j) da.data[j] += g.data[j];
        }
        if (wants(n.b)) {
          Tensor& db = grad_of(n.b);
          for (std::size_t j = 0; j < g.size(); ++j) db.data[j] -= g.data[j];
        }
        break;
      }
      case Op::Mul: {
        const Tensor& a = nodes_[n.a].val;
        const Tensor& b = nodes_[n.b].val;
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          for (std::size_t j = 0; j < g.size(); ++j)
            da.data[j] += g.data[j] * b.data[j];
        }
        if (wants(n.b)) {
          Tensor& db = grad_of(n.b);
          for (std::size_t j = 0; j < g.size(); ++j)
            db.data[j] += g.data[j] * a.data[j];
        }
        break;
      }
      case Op::Div: {
        const Tensor& b = nodes_[n.b].val;
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          for (std::size_t j = 0; j < g.size(); ++j)
            da.data[j] += g.data[j] / b.data[j];
        }
        if (wants(n.b)) {
          Tensor& db = grad_of(n.b);
          for (std::size_t j = 0; j < g.size(); ++j)
            db.data[j] -= g.data[j] * n.val.data[j] / b.data[j];
        }
        break;
      }
      case Op::Scale: {
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          for (std::size_t j = 0; j < g.size(); ++j)
            da.data[j] += g.data[j] * n.aux;
        }
        break;
      }
      case Op::AddConst: {
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          for (std::size_t j = 0; j < g.size(); ++j) da.data[j] += g.data[j];
        }
        break;
      }
      case Op::Tanh: {
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          for (std::size_t j = 0; j < g.size(); ++j)
            da.data[j] += g.data[j] * (1.0 - n.val.data[j] * n.val.data[j]);
        }
        break;
      }
      case Op::Sigmoid: {
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          for (std::size_t j = 0; j < g.size(); ++j)
            da.data[j] += g.data[j] * n.val.data[j] * (1.0 - n.val.data[j]);
        }
        break;
      }
      case Op::Softplus: {
        const Tensor& a = nodes_[n.a].val;
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          for (std::size_t j = 0; j < g.size(); ++j)
            da.data[j] += g.data[j] * detail::sigmoid_scalar(a.data[j]);
        }
        break;
      }
      case Op::Log: {
        const Tensor& a = nodes_[n.a].val;
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          for (std::size_t j = 0; j < g.size(); ++j)
            da.data[j] += g.data[j] / a.data[j];
        }
        break;
      }
      case Op::Square: {
        const Tensor& a = nodes_[n.a].val;
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          for (std::size_t j = 0; j < g.size(); ++j)
            da.data[j] += 2.0 * g.data[j] * a.data[j];
        }
        break;
      }
      case Op::Sum: {
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          const double gv = g.data[0];
          for (std::size_t j = 0; j < da.size(); ++j) da.data[j] += gv;
        }
        break;
      }
      case Op::Mean: {
        if (wants(n.a)) {
          Tensor& da = grad_of(n.a);
          const double gv = g.data[0] / static_cast<double>(da.size());
          for (std::size_t j = 0; j < da.size(); ++j) da.data[j] += gv;
        }
        break;
      }
    }
  }
}

}  // namespace tsbench::nn
