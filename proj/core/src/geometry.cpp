// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gac/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gac::geometry {

NormalizeResult normalize(const Vec& v) {
  if (v.size() < 2) throw std::invalid_argument("normalize: dimension must be >= 2");
  const double raw = v.norm();
  const double denom = std::max(raw, kNormFloor);
  return NormalizeResult{v / denom, raw, raw < kNormFloor};
}

Vec sample_uniform_sphere(int d, Rng& rng) {
  Vec out(d);
  sample_uniform_sphere(d, rng, out.data());
  return out;
}

void sample_uniform_sphere(int d, Rng& rng, double* out) {
  if (d < 2) throw std::invalid_argument("sample_uniform_sphere: d must be >= 2");
  for (;;) {
    rng.fill_normal(out, static_cast<std::size_t>(d));
    double ss = 0;
    for (int i = 0; i < d; ++i) ss += out[i] * out[i];
    const double norm = std::sqrt(ss);
    if (norm >= kNormFloor) {  // resample the measure-zero degenerate draw
      const double inv = 1.0 / norm;
      for (int i = 0; i < d; ++i) out[i] *= inv;
      return;
    }
  }
}

double mixing_weight(double kappa) { return 1.0 / (1.0 + std::exp(-kappa)); }

MixRecord spherical_mix(const Vec& mu, double kappa, const Vec& xi, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("spherical_mix: radius must be positive");
  if (mu.size() != xi.size()) throw std::invalid_argument("spherical_mix: dimension mismatch");
  MixRecord rec;
  rec.mu = mu;
  rec.kappa = kappa;
  rec.weight = mixing_weight(kappa);
  rec.xi = xi;
  rec.radius = radius;
  rec.unnormalized = rec.weight * mu + (1.0 - rec.weight) * xi;
  NormalizeResult n = normalize(rec.unnormalized);
  rec.action = radius * n.unit;
  rec.mix_norm = std::max(n.raw_norm, kNormFloor);
  rec.degenerate = n.degenerate;
  return rec;
}

MixGrad spherical_mix_backward(const MixRecord& record, const Vec& grad_action) {
  if (record.degenerate)
    throw std::invalid_argument("spherical_mix_backward: degenerate record");
  if (grad_action.size() != record.mu.size())
    throw std::invalid_argument("spherical_mix_backward: gradient dimension mismatch");

  const Vec v_hat = record.action / record.radius;
  // a = r * v/||v||  =>  grad_v = r * (g - v_hat (v_hat.g)) / ||v||
  const Vec grad_v =
      (record.radius / record.mix_norm) * (grad_action - v_hat * v_hat.dot(grad_action));

  // v = w*mu + (1-w)*xi with xi constant.
  const Vec grad_mu_unit = record.weight * grad_v;
  // mu site at unit norm: J = I - mu mu^T.
  MixGrad g;
  g.grad_mu_raw = grad_mu_unit - record.mu * record.mu.dot(grad_mu_unit);
  const double dw = record.weight * (1.0 - record.weight);
  g.grad_kappa = dw * (record.mu - record.xi).dot(grad_v);
  return g;
}

double mix_action(const double* mu, double kappa, double radius, int d, Rng& rng,
                  double* out) {
  const double w = 1.0 / (1.0 + std::exp(-kappa));
  double raw_ss;
  do {
    rng.fill_normal(out, static_cast<std::size_t>(d));
    raw_ss = 0;
    for (int i = 0; i < d; ++i) raw_ss += out[i] * out[i];
  } while (raw_ss < kNormFloor * kNormFloor);
  // fold the xi normalization into the mixing coefficient
  const double c = (1.0 - w) / std::sqrt(raw_ss);
  double ss = 0;
  for (int i = 0; i < d; ++i) {
    const double vi = w * mu[i] + c * out[i];
    out[i] = vi;
    ss += vi * vi;
  }
  const double scale = radius / std::max(std::sqrt(ss), kNormFloor);
  for (int i = 0; i < d; ++i) out[i] *= scale;
  return w;
}

Vec expected_direction_mc(const Vec& mu, double kappa, long n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("expected_direction_mc: n must be >= 1");
  const int d = static_cast<int>(mu.size());
  const double w = mixing_weight(kappa);
  const double nw = 1.0 - w;
  Vec acc = Vec::Zero(d);
  Vec xi(d);
  for (long i = 0; i < n; ++i) {
    sample_uniform_sphere(d, rng, xi.data());
    acc.noalias() += w * mu + nw * xi;
  }
  return acc / static_cast<double>(n);
}

ConcentrationStats concentration_stats(const Vec& mu, double kappa, long n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("concentration_stats: n must be >= 2");
  const int d = static_cast<int>(mu.size());
  const double w = mixing_weight(kappa);
  const double nw = 1.0 - w;
  Vec xi(d);
  double cos_sum = 0, ang_sum = 0, ang_sq_sum = 0;
  constexpr double kRadToDeg = 57.295779513082320876798154814105;
  for (long i = 0; i < n; ++i) {
    sample_uniform_sphere(d, rng, xi.data());
    double dot_mu = 0, ss = 0;
    for (int j = 0; j < d; ++j) {
      const double vj = w * mu[j] + nw * xi[j];
      dot_mu += vj * mu[j];
      ss += vj * vj;
    }
    const double norm = std::max(std::sqrt(ss), kNormFloor);
    // clamp: floating-point cosines can exceed 1 by ~1e-16
    const double c = std::clamp(dot_mu / norm, -1.0, 1.0);
    const double ang = std::acos(c) * kRadToDeg;
    cos_sum += c;
    ang_sum += ang;
    ang_sq_sum += ang * ang;
  }
  ConcentrationStats s;
  s.n_samples = n;
  s.mean_cos = cos_sum / static_cast<double>(n);
  const double mean_ang = ang_sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (ang_sq_sum - static_cast<double>(n) * mean_ang * mean_ang) /
                        static_cast<double>(n - 1));
  s.angle_std_deg = std::sqrt(var);
  return s;
}

double large_d_concentration(double w) {
  if (!(w > 0.0 && w < 1.0))
    throw std::invalid_argument("large_d_concentration: w must be in (0,1)");
  return w / std::sqrt(w * w + (1.0 - w) * (1.0 - w));
}

}  // namespace gac::geometry
