// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "tsbench/autodiff.hpp"
#include "tsbench/rng.hpp"

namespace tsbench::nn {

enum class CellKind { Rnn, Gru, Lstm };

std::string cell_kind_name(CellKind kind);
CellKind cell_kind_from_name(const std::string& name);

struct CellConfig {
  CellKind kind = CellKind::Lstm;
  int hidden_size = 32;
  int num_layers = 1;
  int input_size = 1;

  void validate() const;
};

/// One recurrent layer's weights. Gate layout per kind:
///   Rnn:  wx, wh, b                      -> h' = tanh(x wx + h wh + b)
///   Gru:  z/r gates sigmoid, candidate n = tanh(x wxn + r*(h whn) + bn),
///         h' = z*h + (1-z)*n
///   Lstm: i, f, g, o gates; c' = f*c + i*g; h' = o * tanh(c')
struct CellLayer {
  std::vector<Parameter> weights;
  CellKind kind = CellKind::Rnn;
  int input = 0, hidden = 0;
};

struct CellStack {
  CellConfig config;
  std::vector<CellLayer> layers;

  /// Allocates weights and initializes uniform(-k, k), k = 1/sqrt(hidden);
  /// the LSTM forget-gate bias starts at 1.
  void init(const CellConfig& cfg, rng::Rng& rng);
  std::vector<Parameter*> parameters();
  std::vector<const Parameter*> parameters() const;
};

/// Per-layer recurrent state, parameterized by backend value type.
template <class V>
struct CellState {
  std::vector<V> h;
  std::vector<V> c;  // LSTM only
};

template <class B>
CellState<typename B::V> zero_state(B& backend, const CellConfig& cfg,
                                    std::size_t batch) {
  CellState<typename B::V> state;
  for (int l = 0; l < cfg.num_layers; ++l) {
    state.h.push_back(backend.constant(
        Tensor(batch, static_cast<std::size_t>(cfg.hidden_size))));
    if (cfg.kind == CellKind::Lstm)
      state.c.push_back(backend.constant(
          Tensor(batch, static_cast<std::size_t>(cfg.hidden_size))));
  }
  return state;
}

/// Materialized per-graph weight handles for one layer.
template <class V>
struct LayerView {
  std::vector<V> w;
};

template <class B>
LayerView<typename B::V> use_layer(B& backend, CellLayer& layer) {
  LayerView<typename B::V> view;
  view.w.reserve(layer.weights.size());
  for (Parameter& p : layer.weights) view.w.push_back(backend.parameter(p));
  return view;
}

template <class B>
std::vector<LayerView<typename B::V>> use_stack(B& backend, CellStack& stack) {
  std::vector<LayerView<typename B::V>> views;
  views.reserve(stack.layers.size());
  for (CellLayer& layer : stack.layers) views.push_back(use_layer(backend, layer));
  return views;
}

namespace gate {
// weight indices inside CellLayer::weights
inline constexpr int rnn_wx = 0, rnn_wh = 1, rnn_b = 2;
inline constexpr int gru_wxz = 0, gru_whz = 1, gru_bz = 2, gru_wxr = 3,
                     gru_whr = 4, gru_br = 5, gru_wxn = 6, gru_whn = 7,
                     gru_bn = 8;
inline constexpr int lstm_wxi = 0, lstm_whi = 1, lstm_bi = 2, lstm_wxf = 3,
                     lstm_whf = 4, lstm_bf = 5, lstm_wxg = 6, lstm_whg = 7,
                     lstm_bg = 8, lstm_wxo = 9, lstm_who = 10, lstm_bo = 11;
}  // namespace gate

/// Advances one layer by one time step; returns the new hidden state
/// (and updates `state` in place at layer index `l`).
template <class B, class V = typename B::V>
V layer_step(B& g, CellKind kind, const LayerView<V>& w, const V& x,
             CellState<V>& state, std::size_t l) {
  namespace gt = gate;
  switch (kind) {
    case CellKind::Rnn: {
      V pre = g.add_row(g.add(g.matmul(x, w.w[gt::rnn_wx]),
                              g.matmul(state.h[l], w.w[gt::rnn_wh])),
                        w.w[gt::rnn_b]);
      state.h[l] = g.tanh_(pre);
      return state.h[l];
    }
    case CellKind::Gru: {
      V z = g.sigmoid(g.add_row(g.add(g.matmul(x, w.w[gt::gru_wxz]),
                                      g.matmul(state.h[l], w.w[gt::gru_whz])),
                                w.w[gt::gru_bz]));
      V r = g.sigmoid(g.add_row(g.add(g.matmul(x, w.w[gt::gru_wxr]),
                                      g.matmul(state.h[l], w.w[gt::gru_whr])),
                                w.w[gt::gru_br]));
      V n = g.tanh_(g.add_row(
          g.add(g.matmul(x, w.w[gt::gru_wxn]),
                g.matmul(g.mul(r, state.h[l]), w.w[gt::gru_whn])),
          w.w[gt::gru_bn]));
      V keep = g.mul(z, state.h[l]);
      V take = g.mul(g.add_const(g.scale(z, -1.0), 1.0), n);
      state.h[l] = g.add(keep, take);
      return state.h[l];
    }
    case CellKind::Lstm: {
      auto gatev = [&](int wx, int wh, int b) {
        return g.add_row(g.add(g.matmul(x, w.w[wx]),
                               g.matmul(state.h[l], w.w[wh])),
                         w.w[b]);
      };
      V i = g.sigmoid(gatev(gt::lstm_wxi, gt::lstm_whi, gt::lstm_bi));
      V f = g.sigmoid(gatev(gt::lstm_wxf, gt::lstm_whf, gt::lstm_bf));
      V cand = g.tanh_(gatev(gt::lstm_wxg, gt::lstm_whg, gt::lstm_bg));
      V o = g.sigmoid(gatev(gt::lstm_wxo, gt::lstm_who, gt::lstm_bo));
      state.c[l] = g.add(g.mul(f, state.c[l]), g.mul(i, cand));
      state.h[l] = g.mul(o, g.tanh_(state.c[l]));
      return state.h[l];
    }
  }
  throw InvalidArgumentError("unknown cell kind");
}

/// Feeds one input through the whole stack; layer outputs feed upward.
/// Returns the top layer's hidden state.
template <class B, class V = typename B::V>
V stack_step(B& g, const CellConfig& cfg,
             const std::vector<LayerView<V>>& views, const V& x,
             CellState<V>& state) {
  V cur = x;
  for (std::size_t l = 0; l < views.size(); ++l)
    cur = layer_step(g, cfg.kind, views[l], cur, state, l);
  return cur;
}

}  // namespace tsbench::nn
