// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "gac/geometry.hpp"
#include "gac/rng.hpp"

namespace gac::analysis {

using Eigen::VectorXd;

struct ConcentrationRow {
  double kappa = 0;
  double weight = 0;                  // sigmoid(kappa), exact
  double measured_concentration = 0;  // mean cosine with mu
  double angle_std_deg = 0;
};

/// One row per kappa: n normalized mixtures around mu = e1 in dimension d.
std::vector<ConcentrationRow> concentration_table(std::span<const double> kappas, int d,
                                                  long n, Rng& rng);

struct SaturationReport {
  double threshold = 0;
  double mc_fraction = 0;
  double analytic_fraction = 0;
  long n = 0;
};

/// Fraction of pre-squash draws x ~ N(mean, std) whose tanh gradient
/// 1 - tanh^2(x) falls below threshold, Monte Carlo vs the Gaussian-CDF
/// closed form P(|x| > atanh(sqrt(1 - threshold))).
SaturationReport tanh_saturation(double mean, double std_dev, double threshold, long n,
                                 Rng& rng);

/// Closed-form part only (no sampling).
double tanh_saturation_analytic(double mean, double std_dev, double threshold);

/// Saturated fraction of a recorded pre-squash component log.
SaturationReport policy_saturation(std::span<const double> pre_squash, double threshold);

struct VmfSample {
  VectorXd sample;
  long rejections = 0;
};

/// Wood-style von Mises-Fisher sampler on S^{d-1}: cosine by beta-envelope
/// rejection, tangent uniform on S^{d-2}, Householder rotation e1 -> mu.
/// kappa = 0 degenerates to the uniform sphere draw.
VmfSample vmf_sample(const VectorXd& mu, double kappa, Rng& rng);

/// Allocation-free core used by the benchmark; returns the rejection count.
long vmf_sample_into(const double* mu, double kappa, int d, Rng& rng, double* out);

/// vMF differential-entropy surrogate log C_d(kappa) - kappa * A_d(kappa),
/// computed through overflow-safe log-scaled Bessel terms.
double vmf_entropy(double kappa, int d);

/// -kappa + ((d-1)/2) log kappa + const, with const matched to vmf_entropy
/// at kappa_ref.
double vmf_entropy_asymptotic(double kappa, int d, double kappa_ref = 20.0);

/// Mean resultant length A_d(kappa) = I_{d/2}(kappa) / I_{d/2-1}(kappa).
double vmf_mean_resultant(double kappa, int d);

struct SamplerTiming {
  double kappa = 0;
  int d = 0;
  long n = 0;
  double gac_ns_per_sample = 0;
  double vmf_ns_per_sample = 0;
  double vmf_rejections_per_sample = 0;
  double vmf_mean_resultant = 0;  // correctness telltale recorded with the timing
};

/// Times n GAC mixes and n vMF samples per kappa (median of 5 repetitions).
std::vector<SamplerTiming> bench_sampling(int d, std::span<const double> kappas, long n,
                                          Rng& rng);

}  // namespace gac::analysis
