// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>

#include "gac/rng.hpp"

namespace gac::envs {

using Eigen::VectorXd;

struct EnvSpec {
  std::string name;
  int observation_dim = 0;
  int action_dim = 0;
  VectorXd action_low;
  VectorXd action_high;
  int max_episode_steps = 0;
};

struct StepResult {
  VectorXd observation;
  double reward = 0;
  bool terminated = false;
  bool truncated = false;
};

/// Deterministic state machine: same seed and action sequence give the same
/// trajectory. Actions are clipped to the spec bounds inside step(); callers
/// differentiate through the unclipped action.
class Env {
 public:
  virtual ~Env() = default;
  virtual const EnvSpec& spec() const = 0;
  virtual VectorXd reset() = 0;
  virtual StepResult step(const VectorXd& action) = 0;
  /// Task-specific scalar progress measure (distance to goal for the
  /// point-mass task, last per-step reward for the shell task).
  virtual double task_metric() const = 0;
};

/// d-dimensional point mass: observation is [position; goal], dynamics
/// pos += 0.1 * clip(action); reward is the negative distance to the goal;
/// terminates inside a 0.05 ball, truncates at 100 steps. Position is kept
/// inside the [-1,1]^d arena so rewards stay within [-2 sqrt(d), 0].
class PointMassEnv final : public Env {
 public:
  PointMassEnv(int d, std::uint64_t seed);
  const EnvSpec& spec() const override { return spec_; }
  VectorXd reset() override;
  StepResult step(const VectorXd& action) override;
  double task_metric() const override { return distance_; }

  /// Test hook: reset into a pinned configuration.
  VectorXd reset_to(const VectorXd& position, const VectorXd& goal);

  static constexpr double kStepScale = 0.1;
  static constexpr double kGoalRadius = 0.05;
  static constexpr int kHorizon = 100;

 private:
  VectorXd observation() const;
  EnvSpec spec_;
  Rng rng_;
  VectorXd pos_, goal_;
  int steps_ = 0;
  double distance_ = 0;
  bool needs_reset_ = true;
};

/// Directional shell: each observation is a fresh random unit target u;
/// reward = cos(angle(a, u)) - | ||a|| - r_star |. The optimum is exactly
/// a = r_star * u. Episodes truncate after 50 steps; action bounds are
/// +-(r_star + 1) so radius-2.5 policies are not trivially clipped.
class DirectionalShellEnv final : public Env {
 public:
  DirectionalShellEnv(int d, double r_star, std::uint64_t seed);
  const EnvSpec& spec() const override { return spec_; }
  VectorXd reset() override;
  StepResult step(const VectorXd& action) override;
  double task_metric() const override { return last_reward_; }

  double r_star() const { return r_star_; }
  static constexpr int kHorizon = 50;

 private:
  EnvSpec spec_;
  Rng rng_;
  VectorXd target_;
  double r_star_;
  int steps_ = 0;
  double last_reward_ = 0;
  bool needs_reset_ = true;
};

/// Registry keyed by the CLI names "point-mass" and "directional-shell".
/// shell_r_star is ignored by the point-mass task.
std::unique_ptr<Env> make_env(const std::string& name, int d, double shell_r_star,
                              std::uint64_t seed);

}  // namespace gac::envs
