// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gac/analysis.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "gac/bessel.hpp"

namespace gac::analysis {

std::vector<ConcentrationRow> concentration_table(std::span<const double> kappas, int d,
                                                  long n, Rng& rng) {
  VectorXd mu = VectorXd::Zero(d);
  mu(0) = 1.0;
  std::vector<ConcentrationRow> rows;
  rows.reserve(kappas.size());
  for (double kappa : kappas) {
    const auto stats = geometry::concentration_stats(mu, kappa, n, rng);
    rows.push_back({kappa, geometry::mixing_weight(kappa), stats.mean_cos,
                    stats.angle_std_deg});
  }
  return rows;
}

double tanh_saturation_analytic(double mean, double std_dev, double threshold) {
  // 1 - tanh^2(x) < t  <=>  |x| > atanh(sqrt(1 - t))
  const double cutoff = std::atanh(std::sqrt(1.0 - threshold));
  const auto phi = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
  // P(x > cutoff) + P(x < -cutoff)
  return 1.0 - phi((cutoff - mean) / std_dev) + phi((-cutoff - mean) / std_dev);
}

SaturationReport tanh_saturation(double mean, double std_dev, double threshold, long n,
                                 Rng& rng) {
  if (!(std_dev > 0.0)) throw std::invalid_argument("tanh_saturation: std must be positive");
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("tanh_saturation: threshold must be in (0,1)");
  const double cutoff = std::atanh(std::sqrt(1.0 - threshold));
  long hits = 0;
  for (long i = 0; i < n; ++i) {
    const double x = mean + std_dev * rng.normal();
    if (std::fabs(x) > cutoff) ++hits;
  }
  SaturationReport r;
  r.threshold = threshold;
  r.n = n;
  r.mc_fraction = static_cast<double>(hits) / static_cast<double>(n);
  r.analytic_fraction = tanh_saturation_analytic(mean, std_dev, threshold);
  return r;
}

SaturationReport policy_saturation(std::span<const double> pre_squash, double threshold) {
  if (pre_squash.empty()) throw std::invalid_argument("policy_saturation: empty log");
  const double cutoff = std::atanh(std::sqrt(1.0 - threshold));
  long hits = 0;
  for (double x : pre_squash)
    if (std::fabs(x) > cutoff) ++hits;
  SaturationReport r;
  r.threshold = threshold;
  r.n = static_cast<long>(pre_squash.size());
  r.mc_fraction = static_cast<double>(hits) / static_cast<double>(r.n);
  r.analytic_fraction = r.mc_fraction;  // empirical log: no synthetic reference
  return r;
}

// ---------------------------------------------------------------------------
// von Mises-Fisher sampling (Wood 1994)

long vmf_sample_into(const double* mu, double kappa, int d, Rng& rng, double* out) {
  if (d < 2) throw std::invalid_argument("vmf_sample: d must be >= 2");
  if (kappa < 0.0) throw std::invalid_argument("vmf_sample: kappa must be >= 0");
  if (kappa == 0.0) {
    geometry::sample_uniform_sphere(d, rng, out);
    return 0;
  }
  const double dm1 = static_cast<double>(d - 1);
  const double b = (-2.0 * kappa + std::sqrt(4.0 * kappa * kappa + dm1 * dm1)) / dm1;
  const double x0 = (1.0 - b) / (1.0 + b);
  const double c = kappa * x0 + dm1 * std::log(1.0 - x0 * x0);

  long rejections = 0;
  double w0;
  for (;;) {
    const double z = rng.beta(0.5 * dm1, 0.5 * dm1);
    w0 = (1.0 - (1.0 + b) * z) / (1.0 - (1.0 - b) * z);
    const double u = rng.uniform();
    if (kappa * w0 + dm1 * std::log(1.0 - x0 * w0) - c >= std::log(std::max(u, 1e-300)))
      break;
    ++rejections;
  }

  // tangent component uniform on S^{d-2}, composed with the cosine w0
  rng.fill_normal(out + 1, static_cast<std::size_t>(d - 1));
  double ss = 0;
  for (int i = 1; i < d; ++i) ss += out[i] * out[i];
  if (ss < geometry::kNormFloor * geometry::kNormFloor) ss = 1.0;  // measure-zero guard
  const double scale = std::sqrt(std::max(0.0, 1.0 - w0 * w0) / ss);
  out[0] = w0;
  for (int i = 1; i < d; ++i) out[i] *= scale;

  // Householder reflection taking e1 to mu
  double un = 0, dot = 0;
  for (int i = 0; i < d; ++i) {
    const double hi = (i == 0 ? 1.0 : 0.0) - mu[i];
    un += hi * hi;
    dot += hi * out[i];
  }
  if (un > 1e-14) {
    const double f = 2.0 * dot / un;
    for (int i = 0; i < d; ++i) out[i] -= f * ((i == 0 ? 1.0 : 0.0) - mu[i]);
  }
  return rejections;
}

VmfSample vmf_sample(const VectorXd& mu, double kappa, Rng& rng) {
  VmfSample s;
  s.sample.resize(mu.size());
  s.rejections = vmf_sample_into(mu.data(), kappa, static_cast<int>(mu.size()), rng,
                                 s.sample.data());
  return s;
}

// ---------------------------------------------------------------------------
// vMF entropy forms

double vmf_mean_resultant(double kappa, int d) {
  if (d < 2) throw std::invalid_argument("vmf_mean_resultant: d must be >= 2");
  if (kappa == 0.0) return 0.0;
  return bessel::bessel_ratio(0.5 * d - 1.0, kappa);
}

double vmf_entropy(double kappa, int d) {
  if (!(kappa > 0.0)) throw std::invalid_argument("vmf_entropy: kappa must be positive");
  if (d < 2) throw std::invalid_argument("vmf_entropy: d must be >= 2");
  const double nu = 0.5 * d - 1.0;
  constexpr double kLog2Pi = 1.8378770664093454835606594728112;
  const double log_c =
      nu * std::log(kappa) - 0.5 * d * kLog2Pi - bessel::log_bessel_i(nu, kappa);
  return log_c - kappa * bessel::bessel_ratio(nu, kappa);
}

double vmf_entropy_asymptotic(double kappa, int d, double kappa_ref) {
  if (!(kappa > 0.0)) throw std::invalid_argument("vmf_entropy_asymptotic: kappa > 0");
  const double half_dm1 = 0.5 * (d - 1);
  const double constant =
      vmf_entropy(kappa_ref, d) + kappa_ref - half_dm1 * std::log(kappa_ref);
  return -kappa + half_dm1 * std::log(kappa) + constant;
}

// ---------------------------------------------------------------------------
// Sampling benchmark

namespace {

double median5(std::array<double, 5> v) {
  std::sort(v.begin(), v.end());
  return v[2];
}

}  // namespace

std::vector<SamplerTiming> bench_sampling(int d, std::span<const double> kappas, long n,
                                          Rng& rng) {
  using clock = std::chrono::steady_clock;
  std::vector<SamplerTiming> out;
  std::vector<double> mu(static_cast<std::size_t>(d), 0.0);
  mu[0] = 1.0;
  std::vector<double> buf(static_cast<std::size_t>(d));
  volatile double sink = 0;

  for (double kappa : kappas) {
    SamplerTiming t;
    t.kappa = kappa;
    t.d = d;
    t.n = n;

    std::array<double, 5> gac_ns{}, vmf_ns{};
    for (int rep = 0; rep < 5; ++rep) {
      const auto t0 = clock::now();
      for (long i = 0; i < n; ++i) {
        geometry::mix_action(mu.data(), kappa, 2.5, d, rng, buf.data());
        sink = sink + buf[0];
      }
      const auto t1 = clock::now();
      gac_ns[static_cast<std::size_t>(rep)] =
          std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(n);
    }
    long rej_total = 0;
    double resultant = 0;
    for (int rep = 0; rep < 5; ++rep) {
      long rej = 0;
      const auto t0 = clock::now();
      for (long i = 0; i < n; ++i) {
        rej += vmf_sample_into(mu.data(), kappa, d, rng, buf.data());
        sink = sink + buf[0];
      }
      const auto t1 = clock::now();
      vmf_ns[static_cast<std::size_t>(rep)] =
          std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(n);
      rej_total += rej;
    }
    // correctness telltale, untimed
    const long m = std::min<long>(n, 20000);
    for (long i = 0; i < m; ++i) {
      vmf_sample_into(mu.data(), kappa, d, rng, buf.data());
      double dot = 0;
      for (int j = 0; j < d; ++j) dot += buf[static_cast<std::size_t>(j)] * mu[static_cast<std::size_t>(j)];
      resultant += dot;
    }
    t.gac_ns_per_sample = median5(gac_ns);
    t.vmf_ns_per_sample = median5(vmf_ns);
    t.vmf_rejections_per_sample = static_cast<double>(rej_total) / (5.0 * static_cast<double>(n));
    t.vmf_mean_resultant = resultant / static_cast<double>(m);
    out.push_back(t);
  }
  (void)sink;
  return out;
}

}  // namespace gac::analysis
