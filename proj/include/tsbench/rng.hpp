// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tsbench::rng {

/// 64-bit FNV-1a. Used wherever a derived seed must be stable across
/// platforms (bench cell seeds are fnv1a64("model|fraction|seed")).
std::uint64_t fnv1a64(std::string_view text);

/// Mixes a base seed with a stream index into an independent substream seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// Deterministic generator wrapper with explicit draw algorithms so that a
/// seed reproduces the same stream in every build of this library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01();                      // [0, 1)
  double uniform(double lo, double hi);
  double normal(double mean = 0.0, double sd = 1.0);  // polar Box-Muller
  double gamma(double shape);              // Marsaglia-Tsang, shape > 0
  double chi_squared(double dof);
  double student_t(double dof);
  std::uint64_t integer();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace tsbench::rng
