// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/cells.hpp"

#include <cmath>

#include "tsbench/errors.hpp"

namespace tsbench::nn {

std::string cell_kind_name(CellKind kind) {
  switch (kind) {
    case CellKind::Rnn: return "rnn";
    case CellKind::Gru: return "gru";
    case CellKind::Lstm: return "lstm";
  }
  return "?";
}

CellKind cell_kind_from_name(const std::string& name) {
  if (name == "rnn") return CellKind::Rnn;
  if (name == "gru") return CellKind::Gru;
  if (name == "lstm") return CellKind::Lstm;
  throw InvalidArgumentError("unknown cell kind '" + name + "'");
}

void CellConfig::validate() const {
  if (hidden_size < 1 || num_layers < 1 || input_size < 1)
    throw InvalidArgumentError("cell config sizes must be >= 1");
}

namespace {

Parameter make_weight(const std::string& name, std::size_t rows,
                      std::size_t cols, double k, rng::Rng& rng) {
  Parameter p(name, rows, cols);
  for (double& v : p.value.data) v = rng.uniform(-k, k);
  return p;
}

Parameter make_bias(const std::string& name, std::size_t cols, double fill) {
  Parameter p(name, 1, cols);
  for (double& v : p.value.data) v = fill;
  return p;
}

}  // namespace

void CellStack::init(const CellConfig& cfg, rng::Rng& rng) {
  cfg.validate();
  config = cfg;
  layers.clear();
  const auto hidden = static_cast<std::size_t>(cfg.hidden_size);
  const double k = 1.0 / std::sqrt(static_cast<double>(cfg.hidden_size));

  for (int l = 0; l < cfg.num_layers; ++l) {
    const std::size_t in =
        l == 0 ? static_cast<std::size_t>(cfg.input_size) : hidden;
    CellLayer layer;
    layer.kind = cfg.kind;
    layer.input = static_cast<int>(in);
    layer.hidden = cfg.hidden_size;
    const std::string tag = "l" + std::to_string(l) + ".";
    switch (cfg.kind) {
      case CellKind::Rnn:
        layer.weights.push_back(make_weight(tag + "wx", in, hidden, k, rng));
        layer.weights.push_back(make_weight(tag + "wh", hidden, hidden, k, rng));
        layer.weights.push_back(make_bias(tag + "b", hidden, 0.0));
        break;
      case CellKind::Gru:
        for (const char* gate : {"z", "r", "n"}) {
          layer.weights.push_back(
              make_weight(tag + "wx" + gate, in, hidden, k, rng));
          layer.weights.push_back(
              make_weight(tag + "wh" + gate, hidden, hidden, k, rng));
          layer.weights.push_back(make_bias(tag + "b" + gate, hidden, 0.0));
        }
        break;
      case CellKind::Lstm:
        for (const char* gate : {"i", "f", "g", "o"}) {
          layer.weights.push_back(
              make_weight(tag + "wx" + gate, in, hidden, k, rng));
          layer.weights.push_back(
              make_weight(tag + "wh" + gate, hidden, hidden, k, rng));
          const double bias0 = gate[0] == 'f' ? 1.0 : 0.0;
          layer.weights.push_back(make_bias(tag + "b" + gate, hidden, bias0));
        }
        break;
    }
    layers.push_back(std::move(layer));
  }
}

std::vector<Parameter*> CellStack::parameters() {
  std::vector<Parameter*> out;
  for (CellLayer& layer : layers)
    for (Parameter& p : layer.weights) out.push_back(&p);
  return out;
}

std::vector<const Parameter*> CellStack::parameters() const {
  std::vector<const Parameter*> out;
  for (const CellLayer& layer : layers)
    for (const Parameter& p : layer.weights) out.push_back(&p);
  return out;
}

}  // namespace tsbench::nn
