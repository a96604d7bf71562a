// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// This translation unit is compiled with -ffast-math so the Box-Muller
// refill loops vectorize through the math library. All inputs are kept in
// (0, 1], so every intermediate stays finite.

#include "gac/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace gac {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

inline std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& w : state_) w = splitmix64(s);
}

Rng::Rng(std::uint64_t root_seed, std::string_view stream_name)
    : Rng(derive_stream_seed(root_seed, stream_name)) {}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
  // Lemire's nearly-divisionless rejection method.
  std::uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  std::uint64_t l = static_cast<std::uint64_t>(m);
  if (l < n) {
    std::uint64_t t = -n % n;
    while (l < t) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * n;
      l = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

void Rng::refill() {
  constexpr int half = kBuf / 2;
  double u1[half], u2[half], r[half], c[half], s[half];
  for (int i = 0; i < half; ++i) u1[i] = 1.0 - uniform();  // (0, 1]
  for (int i = 0; i < half; ++i) u2[i] = uniform();
  for (int i = 0; i < half; ++i) r[i] = std::sqrt(-2.0 * std::log(u1[i]));
  for (int i = 0; i < half; ++i) c[i] = std::cos(kTwoPi * u2[i]);
  for (int i = 0; i < half; ++i) s[i] = std::sin(kTwoPi * u2[i]);
  for (int i = 0; i < half; ++i) {
    buf_[2 * i] = r[i] * c[i];
    buf_[2 * i + 1] = r[i] * s[i];
  }
  pos_ = 0;
}

double Rng::normal() {
  if (pos_ == kBuf) refill();
  return buf_[pos_++];
}

void Rng::fill_normal(double* out, std::size_t n) {
  std::size_t i = 0;
  while (i < n) {
    if (pos_ == kBuf) refill();
    const std::size_t take = std::min<std::size_t>(n - i, kBuf - pos_);
    for (std::size_t k = 0; k < take; ++k) out[i + k] = buf_[pos_ + k];
    pos_ += static_cast<int>(take);
    i += take;
  }
}

double Rng::gamma(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("Rng::gamma: alpha must be positive");
  if (alpha < 1.0) {
    // Boost: G(a) = G(a+1) * U^{1/a}.
    return gamma(alpha + 1.0) * std::pow(1.0 - uniform(), 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::beta(double a, double b) {
  const double x = gamma(a);
  const double y = gamma(b);
  return x / (x + y);
}

std::uint64_t derive_stream_seed(std::uint64_t root_seed, std::string_view stream_name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char ch : stream_name) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  std::uint64_t s = root_seed ^ h;
  std::uint64_t out = splitmix64(s);
  out ^= splitmix64(s);
  return out;
}

}  // namespace gac
