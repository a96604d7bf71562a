// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gac/geometry.hpp"
#include "gac/rng.hpp"

namespace gac::netcore {

using Eigen::MatrixXd;
using Eigen::VectorXd;

enum class Activation : std::uint8_t { kRelu = 0, kIdentity = 1 };

struct LayerSpec {
  int in_width;
  int out_width;
  Activation activation;
};

/// Raised when non-finite values reach the optimizer. The training loop
/// converts it into a diverged report instead of crashing.
struct DivergenceSignal : std::runtime_error {
  explicit DivergenceSignal(const std::string& what) : std::runtime_error(what) {}
};

struct AdamConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct Layer {
  MatrixXd weight;  // out x in
  VectorXd bias;    // out
  MatrixXd grad_weight;
  VectorXd grad_bias;
  MatrixXd m_weight, v_weight;  // Adam moments
  VectorXd m_bias, v_bias;
  Activation activation = Activation::kIdentity;
};

/// Minimal dense network with explicit forward/backward passes. Batches are
/// column-major: each column of an activation matrix is one sample.
class Mlp {
 public:
  /// Weights initialized uniform in +-1/sqrt(fan_in), biases zero.
  Mlp(std::vector<LayerSpec> specs, Rng& init_rng);

  struct Cache {
    MatrixXd input;
    std::vector<MatrixXd> pre;   // pre-activation per layer
    std::vector<MatrixXd> post;  // post-activation per layer
  };

  MatrixXd forward(const MatrixXd& x) const;
  Cache forward_cached(const MatrixXd& x) const;

  /// Accumulates parameter gradients (mean handled by the caller via
  /// grad_output scaling) and returns the gradient w.r.t. the input.
  MatrixXd backward(const Cache& cache, const MatrixXd& grad_output);

  /// Input gradient only; parameters untouched (used when the critic is
  /// frozen during the actor pass).
  MatrixXd backward_input_only(const Cache& cache, const MatrixXd& grad_output) const;

  /// Bias-corrected Adam update; zeroes gradients afterwards.
  /// Throws DivergenceSignal if any gradient is non-finite.
  void adam_step(const AdamConfig& cfg);
  void zero_grads();

  /// target <- tau * source + (1 - tau) * target, elementwise.
  static void soft_update(const Mlp& source, Mlp& target, double tau);

  int input_width() const { return layers_.front().weight.cols(); }
  int output_width() const { return layers_.back().weight.rows(); }
  long parameter_count() const;
  std::int64_t adam_steps() const { return adam_steps_; }

  std::vector<Layer>& layers() { return layers_; }
  const std::vector<Layer>& layers() const { return layers_; }

 private:
  std::vector<Layer> layers_;
  std::int64_t adam_steps_ = 0;
};

/// Writes/reads a named set of networks in the GACNET1 checkpoint layout
/// (see README for the byte-level description).
void save_networks(std::ostream& os,
                   const std::vector<std::pair<std::string, const Mlp*>>& nets);
void save_networks(const std::string& path,
                   const std::vector<std::pair<std::string, const Mlp*>>& nets);
std::map<std::string, Mlp> load_networks(std::istream& is);
std::map<std::string, Mlp> load_networks(const std::string& path);

/// GAC policy: shared 256x256 backbone, direction head (affine to d, then
/// unit-sphere normalization) and concentration head (256->64 rectified,
/// 64->1 identity). Emits d+1 head outputs per state.
class GacPolicy {
 public:
  GacPolicy(int obs_dim, int action_dim, Rng& init_rng);
  /// Rebuild from checkpoint networks.
  GacPolicy(Mlp backbone, Mlp dir_head, Mlp kappa_head);

  struct Forward {
    Mlp::Cache backbone, dir, kappa_head;
    MatrixXd dir_logits;      // d x B, pre-normalization
    MatrixXd mu;              // d x B, unit columns
    VectorXd dir_norm;        // clamped pre-normalization norms
    VectorXd kappa;           // B
    std::vector<char> degenerate;  // per-sample epsilon-guard flag
    bool any_degenerate = false;
  };

  Forward forward(const MatrixXd& states) const;

  /// grad_mu must already include the mixture-side chain (it is projected
  /// onto the tangent space here as part of the direction-normalization
  /// Jacobian); grad_kappa is the direct concentration gradient.
  void backward(const Forward& fwd, const MatrixXd& grad_mu, const VectorXd& grad_kappa);

  void adam_step(const AdamConfig& cfg);
  void zero_grads();

  int action_dim() const { return dir_head_.output_width(); }
  int obs_dim() const { return backbone_.input_width(); }
  /// d + 1: direction vector plus one concentration scalar.
  int head_output_count() const { return action_dim() + 1; }
  long head_parameter_count() const {
    return dir_head_.parameter_count() + kappa_head_.parameter_count();
  }

  Mlp& backbone() { return backbone_; }
  Mlp& dir_head() { return dir_head_; }
  Mlp& kappa_head() { return kappa_head_; }
  const Mlp& backbone() const { return backbone_; }
  const Mlp& dir_head() const { return dir_head_; }
  const Mlp& kappa_head() const { return kappa_head_; }

 private:
  Mlp backbone_;
  Mlp dir_head_;
  Mlp kappa_head_;
};

/// Tanh-squashed diagonal Gaussian baseline head. Emits 2d outputs
/// (mean and log-std per dimension); log-std is clamped to [-5, 2].
class GaussianPolicy {
 public:
  static constexpr double kLogStdMin = -5.0;
  static constexpr double kLogStdMax = 2.0;
  static constexpr double kSquashEps = 1e-6;

  GaussianPolicy(int obs_dim, int action_dim, Rng& init_rng);
  GaussianPolicy(Mlp backbone, Mlp head);

  struct Forward {
    Mlp::Cache backbone, head;
    MatrixXd mean;         // d x B
    MatrixXd log_std;      // d x B, clamped
    MatrixXd clamp_mask;   // 1 where the raw log-std was inside the clamp
  };

  struct Sample {
    MatrixXd z;           // noise used (d x B)
    MatrixXd pre_squash;  // mean + std .* z
    MatrixXd action;      // tanh(pre_squash), in (-1,1)^d
    VectorXd log_prob;    // per sample, tanh change-of-variables included
  };

  Forward forward(const MatrixXd& states) const;
  Sample sample(const Forward& fwd, Rng& rng) const;
  /// Deterministic head: tanh(mean).
  MatrixXd mean_action(const Forward& fwd) const;

  /// Reparameterized gradients: grad_action flows through the sample path,
  /// grad_log_prob through the density value (both per sample).
  void backward(const Forward& fwd, const Sample& smp, const MatrixXd& grad_action,
                const VectorXd& grad_log_prob);

  void adam_step(const AdamConfig& cfg);
  void zero_grads();

  int action_dim() const { return head_.output_width() / 2; }
  int obs_dim() const { return backbone_.input_width(); }
  /// 2d: mean and log-std per action dimension.
  int head_output_count() const { return head_.output_width(); }

  Mlp& backbone() { return backbone_; }
  Mlp& head() { return head_; }
  const Mlp& backbone() const { return backbone_; }
  const Mlp& head() const { return head_; }

 private:
  Mlp backbone_;
  Mlp head_;
};

}  // namespace gac::netcore
