// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include "gac/rng.hpp"

namespace gac::geometry {

using Vec = Eigen::VectorXd;

/// Floor applied to pre-normalization norms. Inputs below the floor are
/// scaled by 1/kNormFloor and flagged degenerate instead of dividing by
/// their own (near-zero) norm.
inline constexpr double kNormFloor = 1e-8;

struct NormalizeResult {
  Vec unit;         // v / max(||v||, kNormFloor)
  double raw_norm;  // ||v|| before clamping
  bool degenerate;  // true when ||v|| < kNormFloor
};

/// Projects v onto the unit sphere. Never divides by zero; callers may
/// inspect `degenerate` for near-zero inputs.
NormalizeResult normalize(const Vec& v);

/// Uniform draw on S^{d-1}: d standard normals, normalized.
Vec sample_uniform_sphere(int d, Rng& rng);

/// In-place variant for hot loops; writes d components into out.
void sample_uniform_sphere(int d, Rng& rng, double* out);

/// Mixing weight w(kappa) = 1 / (1 + exp(-kappa)).
double mixing_weight(double kappa);

/// Full audit record of one spherical mix a = r * normalize(w*mu + (1-w)*xi).
struct MixRecord {
  Vec mu;            // unit policy direction
  double kappa = 0;  // raw concentration score
  double weight = 0; // sigmoid(kappa)
  Vec xi;            // unit noise direction
  Vec unnormalized;  // v = w*mu + (1-w)*xi
  Vec action;        // r * normalize(v)
  double radius = 0;
  double mix_norm = 0;  // max(||v||, kNormFloor)
  bool degenerate = false;
};

/// The GAC action rule. Requires ||mu|| = ||xi|| = 1 and r > 0.
MixRecord spherical_mix(const Vec& mu, double kappa, const Vec& xi, double radius);

struct MixGrad {
  Vec grad_mu_raw;       // d(action)/d(mu_raw)^T * grad_action, at ||mu_raw|| = 1
  double grad_kappa = 0; // d(action)/d(kappa) . grad_action
};

/// Reverse-mode derivatives of spherical_mix. xi is treated as a constant
/// (reparameterized noise); gradients flow through mu and kappa only. The
/// normalization Jacobian J(x) = (I - x_hat x_hat^T)/||x|| is applied at
/// both normalization sites: the mu site at unit norm, the mixture site at
/// ||v||. Rejects degenerate records.
MixGrad spherical_mix_backward(const MixRecord& record, const Vec& grad_action);

/// Lean sampling path used by the trainer and the benchmarks: draws xi,
/// mixes and writes the r-scaled action into out[0..d). Returns the mixing
/// weight actually used.
double mix_action(const double* mu, double kappa, double radius, int d, Rng& rng,
                  double* out);

/// Monte-Carlo mean of the unnormalized mixture v over n noise draws.
/// Converges to w(kappa) * mu.
Vec expected_direction_mc(const Vec& mu, double kappa, long n, Rng& rng);

struct ConcentrationStats {
  double mean_cos = 0;       // sample mean of cos(angle(a_hat, mu))
  double angle_std_deg = 0;  // sample std of the angles, degrees
  long n_samples = 0;
};

/// Generates n normalized mixtures around mu and measures their alignment.
ConcentrationStats concentration_stats(const Vec& mu, double kappa, long n, Rng& rng);

/// Large-d concentration-of-measure approximation w / sqrt(w^2 + (1-w)^2).
double large_d_concentration(double w);

}  // namespace gac::geometry
