// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#include "tsbench/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>

#include "tsbench/errors.hpp"

namespace tsbench::nn {

void write_double(std::ostream& os, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%a", v);
  os << buf;
}

double read_double(std::istream& is) {
  const std::string tok = read_token(is);
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw IoError("model dump: bad double token '" + tok + "'");
  return v;
}

std::string read_token(std::istream& is) {
  std::string tok;
  if (!(is >> tok)) throw IoError("model dump: unexpected end of stream");
  return tok;
}

void expect_token(std::istream& is, const std::string& token) {
  const std::string tok = read_token(is);
  if (tok != token)
    throw IoError("model dump: expected '" + token + "', got '" + tok + "'");
}

void write_tensor(std::ostream& os, const std::string& name, const Tensor& t) {
  os << "tensor " << name << ' ' << t.rows() << ' ' << t.cols() << '\n';
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.cols(); ++c) {
      if (c) os << ' ';
      write_double(os, t(r, c));
    }
    os << '\n';
  }
}

Tensor read_tensor(std::istream& is, const std::string& expect_name) {
  expect_token(is, "tensor");
  const std::string name = read_token(is);
  if (!expect_name.empty() && name != expect_name)
    throw IoError("model dump: expected tensor '" + expect_name + "', got '" +
                  name + "'");
  const std::size_t rows = std::stoul(read_token(is));
  const std::size_t cols = std::stoul(read_token(is));
  Tensor t(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) t(r, c) = read_double(is);
  return t;
}

void write_param(std::ostream& os, const Parameter& p) {
  write_tensor(os, p.name.empty() ? "param" : p.name, p.value);
}

void read_param(std::istream& is, Parameter& p) {
  p.value = read_tensor(is, "");
  p.grad = Tensor(p.value.rows(), p.value.cols());
}

}  // namespace tsbench::nn
