// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gac/envs.hpp"

#include <cmath>
#include <stdexcept>

#include "gac/geometry.hpp"

namespace gac::envs {

namespace {

VectorXd clip(const VectorXd& v, const VectorXd& lo, const VectorXd& hi) {
  return v.cwiseMax(lo).cwiseMin(hi);
}

}  // namespace

PointMassEnv::PointMassEnv(int d, std::uint64_t seed) : rng_(seed) {
  if (d < 2) throw std::invalid_argument("point-mass: d must be >= 2");
  spec_.name = "point-mass";
  spec_.observation_dim = 2 * d;
  spec_.action_dim = d;
  spec_.action_low = VectorXd::Constant(d, -1.0);
  spec_.action_high = VectorXd::Constant(d, 1.0);
  spec_.max_episode_steps = kHorizon;
}

VectorXd PointMassEnv::observation() const {
  VectorXd obs(spec_.observation_dim);
  obs << pos_, goal_;
  return obs;
}

VectorXd PointMassEnv::reset() {
  const int d = spec_.action_dim;
  pos_.resize(d);
  goal_.resize(d);
  for (int i = 0; i < d; ++i) pos_(i) = rng_.uniform(-1.0, 1.0);
  for (int i = 0; i < d; ++i) goal_(i) = rng_.uniform(-1.0, 1.0);
  steps_ = 0;
  distance_ = (pos_ - goal_).norm();
  needs_reset_ = false;
  return observation();
}

VectorXd PointMassEnv::reset_to(const VectorXd& position, const VectorXd& goal) {
  pos_ = position;
  goal_ = goal;
  steps_ = 0;
  distance_ = (pos_ - goal_).norm();
  needs_reset_ = false;
  return observation();
}

StepResult PointMassEnv::step(const VectorXd& action) {
  if (needs_reset_) throw std::logic_error("point-mass: step() before reset()");
  if (action.size() != spec_.action_dim)
    throw std::invalid_argument("point-mass: action dimension mismatch");
  pos_ += kStepScale * clip(action, spec_.action_low, spec_.action_high);
  pos_ = pos_.cwiseMax(-1.0).cwiseMin(1.0);  // arena walls
  ++steps_;
  distance_ = (pos_ - goal_).norm();
  StepResult r;
  r.reward = -distance_;
  r.terminated = distance_ < kGoalRadius;
  r.truncated = !r.terminated && steps_ >= kHorizon;
  r.observation = observation();
  if (r.terminated || r.truncated) needs_reset_ = true;
  return r;
}

DirectionalShellEnv::DirectionalShellEnv(int d, double r_star, std::uint64_t seed)
    : rng_(seed), r_star_(r_star) {
  if (d < 2) throw std::invalid_argument("directional-shell: d must be >= 2");
  if (r_star <= 0.0) throw std::invalid_argument("directional-shell: r_star must be positive");
  spec_.name = "directional-shell";
  spec_.observation_dim = d;
  spec_.action_dim = d;
  spec_.action_low = VectorXd::Constant(d, -(r_star + 1.0));
  spec_.action_high = VectorXd::Constant(d, r_star + 1.0);
  spec_.max_episode_steps = kHorizon;
}

VectorXd DirectionalShellEnv::reset() {
  target_ = geometry::sample_uniform_sphere(spec_.action_dim, rng_);
  steps_ = 0;
  last_reward_ = 0;
  needs_reset_ = false;
  return target_;
}

StepResult DirectionalShellEnv::step(const VectorXd& action) {
  if (needs_reset_) throw std::logic_error("directional-shell: step() before reset()");
  if (action.size() != spec_.action_dim)
    throw std::invalid_argument("directional-shell: action dimension mismatch");
  const VectorXd a = clip(action, spec_.action_low, spec_.action_high);
  const double norm = a.norm();
  const double cos_align =
      norm < geometry::kNormFloor ? 0.0 : a.dot(target_) / norm;
  last_reward_ = cos_align - std::abs(norm - r_star_);
  ++steps_;
  StepResult r;
  r.reward = last_reward_;
  r.terminated = false;
  r.truncated = steps_ >= kHorizon;
  target_ = geometry::sample_uniform_sphere(spec_.action_dim, rng_);  // next target
  r.observation = target_;
  if (r.truncated) needs_reset_ = true;
  return r;
}

std::unique_ptr<Env> make_env(const std::string& name, int d, double shell_r_star,
                              std::uint64_t seed) {
  if (name == "point-mass") return std::make_unique<PointMassEnv>(d, seed);
  if (name == "directional-shell")
    return std::make_unique<DirectionalShellEnv>(d, shell_r_star, seed);
  throw std::invalid_argument("unknown environment: " + name);
}

}  // namespace gac::envs
