// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace gac {

/// Deterministic random stream: xoshiro256** engine with a buffered
/// Box-Muller normal source. All distributions are implemented in-repo so
/// that sequences are reproducible bit-for-bit across standard libraries.
///
/// Every consumer owns its own stream; streams derived from the same root
/// seed under different names are independent (see derive_stream_seed).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  Rng(std::uint64_t root_seed, std::string_view stream_name);

  std::uint64_t next_u64();

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Unbiased integer in [0, n), n >= 1 (Lemire rejection).
  std::uint64_t below(std::uint64_t n);

  /// Standard normal draw.
  double normal();
  /// Fills out[0..n) with standard normals. Same stream semantics as
  /// repeated normal() calls.
  void fill_normal(double* out, std::size_t n);

  /// Gamma(alpha, 1), alpha > 0 (Marsaglia-Tsang; boosted for alpha < 1).
  double gamma(double alpha);
  /// Beta(a, b) from two gamma draws.
  double beta(double a, double b);

 private:
  void refill();

  std::array<std::uint64_t, 4> state_;
  static constexpr int kBuf = 128;
  std::array<double, kBuf> buf_;
  int pos_ = kBuf;
};

/// Mixes (root seed, stream name) into an independent sub-stream seed.
/// FNV-1a over the name, then splitmix64 finalization. Adding or removing
/// one consumer's stream never perturbs another's draws.
std::uint64_t derive_stream_seed(std::uint64_t root_seed, std::string_view stream_name);

}  // namespace gac
