// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "tsbench/autodiff.hpp"

namespace tsbench::nn {

// Line-based model dump format. Doubles are written as C hex-float literals
// so a round trip is bit exact. Layout:
//   tsbench-model v1
//   <kind line written by the model type>
//   ... key/value lines ...
//   tensor <name> <rows> <cols>
//   <rows lines of cols hex doubles>

inline constexpr const char* kModelMagic = "tsbench-model v1";

void write_double(std::ostream& os, double v);
double read_double(std::istream& is);

void write_tensor(std::ostream& os, const std::string& name, const Tensor& t);
Tensor read_tensor(std::istream& is, const std::string& expect_name);

void write_param(std::ostream& os, const Parameter& p);
void read_param(std::istream& is, Parameter& p);

/// Reads one whitespace-delimited token; throws IoError at end of stream.
std::string read_token(std::istream& is);
void expect_token(std::istream& is, const std::string& token);

}  // namespace tsbench::nn
