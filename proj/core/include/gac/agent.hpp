// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "gac/envs.hpp"
#include "gac/netcore.hpp"
#include "gac/rng.hpp"

namespace gac::agent {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Transition {
  VectorXd state;
  VectorXd action;
  double reward = 0;
  VectorXd next_state;
  bool done = false;  // true termination only; truncation still bootstraps
};

/// Ring buffer with FIFO overwrite and uniform batch sampling without
/// replacement within a batch.
class ReplayBuffer {
 public:
  ReplayBuffer(long capacity, int obs_dim, int action_dim);

  void push(const Transition& t);
  long size() const { return size_; }
  long capacity() const { return capacity_; }
  Transition at(long i) const;  // i in [0, size)

  struct Batch {
    MatrixXd states;       // obs x B
    MatrixXd actions;      // act x B
    VectorXd rewards;      // B
    MatrixXd next_states;  // obs x B
    VectorXd done;         // B, 1.0 where terminal
  };

  Batch sample(int batch_size, Rng& rng) const;
  std::vector<long> sample_indices(int batch_size, Rng& rng) const;

 private:
  long capacity_;
  long size_ = 0;
  long cursor_ = 0;
  MatrixXd states_, actions_, next_states_;
  VectorXd rewards_, done_;
};

struct TrainConfig {
  double gamma = 0.99;
  double tau = 0.005;
  int batch = 256;
  double actor_lr = 3e-4;
  double critic_lr = 1e-3;
  double radius = 2.5;
  long steps = 50000;
  long warmup = 1000;
  double alpha = 0.2;  // baseline entropy temperature
  long buffer_capacity = 100000;
  bool no_kappa = false;      // ablation: fix w = sigmoid(1), drop -kappa terms
  bool no_normalize = false;  // ablation: action = r * v without the outer normalize
  std::uint64_t seed = 0;
  int eval_episodes = 10;
  long log_window = 500;

  void validate() const;
};

struct TrainReport {
  enum class Status { kCompleted, kDiverged };
  Status status = Status::kCompleted;
  long diverged_step = -1;  // first step with a non-finite loss/param
  long steps_run = 0;

  std::vector<double> actor_losses;   // one per gradient step
  std::vector<double> critic_losses;  // one per gradient step
  std::vector<double> kappa_values;   // kappa(s) per post-warmup env step

  struct Episode {
    long end_step = 0;
    double ret = 0;
    double final_metric = 0;  // env task_metric at episode end
  };
  std::vector<Episode> episodes;

  bool unbounded_action = false;          // an emitted action left the r-sphere
  bool degenerate_direction_seen = false;

  double eval_return = std::numeric_limits<double>::quiet_NaN();
  double eval_final_metric = std::numeric_limits<double>::quiet_NaN();
  double eval_mean_step_reward = std::numeric_limits<double>::quiet_NaN();

  struct WindowRow {
    long step = 0;
    double actor_loss = 0, critic_loss = 0;
    double kappa_mean = 0, kappa_min = 0, kappa_max = 0;
    double episode_return = 0;
    bool has_return = false;
  };
  std::vector<WindowRow> windows;
};

/// Mean final_metric over episodes that ended within the trailing
/// window_steps of the run; NaN when no episode ended there.
double final_window_metric(const TrainReport& report, long window_steps);
/// Mean episodic return over the same trailing window.
double final_window_return(const TrainReport& report, long window_steps);

/// Shared SAC-style loop: warmup with uniform actions, then one gradient
/// step (critic, actor, Polyak) per environment step. Subclasses provide
/// the policy-specific pieces.
class Trainer {
 public:
  Trainer(std::unique_ptr<envs::Env> env, TrainConfig cfg);
  virtual ~Trainer() = default;

  TrainReport run();

  /// Deterministic-mode evaluation on a fresh env stream; returns mean
  /// episodic return and fills the optional metric outputs.
  double evaluate(int episodes, double* mean_final_metric = nullptr,
                  double* mean_step_reward = nullptr);

  virtual VectorXd act(const VectorXd& state, bool deterministic,
                       double* kappa_out = nullptr) = 0;
  virtual double critic_update(const ReplayBuffer::Batch& batch) = 0;
  virtual double actor_update(const ReplayBuffer::Batch& batch) = 0;
  virtual void soft_update_targets() = 0;
  virtual void save_checkpoint(const std::string& path) const = 0;

  envs::Env& env() { return *env_; }
  const TrainConfig& config() const { return cfg_; }
  ReplayBuffer& replay() { return replay_; }

 protected:
  std::unique_ptr<envs::Env> env_;
  TrainConfig cfg_;
  ReplayBuffer replay_;
  Rng noise_rng_;
  Rng warmup_rng_;
  Rng replay_rng_;
  TrainReport report_;
};

/// GAC head: actor loss -kappa(s) - min_i Q_i(s, a); soft target
/// y = r + gamma (1-done) (min_i Q'_i(s', a') - kappa(s')).
class GacTrainer final : public Trainer {
 public:
  GacTrainer(std::unique_ptr<envs::Env> env, TrainConfig cfg);

  VectorXd act(const VectorXd& state, bool deterministic, double* kappa_out) override;
  double critic_update(const ReplayBuffer::Batch& batch) override;
  double actor_update(const ReplayBuffer::Batch& batch) override;
  void soft_update_targets() override;
  void save_checkpoint(const std::string& path) const override;

  /// Stochastic action plus the audit record of the mix that produced it.
  VectorXd act_recorded(const VectorXd& state, geometry::MixRecord* record);

  /// Builds the Eq.-style regression targets for a batch (exposed for tests).
  VectorXd critic_targets(const ReplayBuffer::Batch& batch);

  netcore::GacPolicy& policy() { return policy_; }
  netcore::Mlp& q1() { return q1_; }
  netcore::Mlp& q2() { return q2_; }
  netcore::Mlp& q1_target() { return q1t_; }
  netcore::Mlp& q2_target() { return q2t_; }

 private:
  /// Actions for a policy forward pass with fresh noise. Returns d x B
  /// actions and fills the per-column mix data used for gradients.
  struct MixBatch {
    MatrixXd xi;        // d x B
    VectorXd weight;    // B
    MatrixXd v;         // unnormalized mixture
    VectorXd mix_norm;  // clamped ||v||
    MatrixXd actions;   // d x B
  };
  MixBatch mix_batch(const netcore::GacPolicy::Forward& fwd);

  netcore::GacPolicy policy_;
  Rng critic_init_rng_;
  netcore::Mlp q1_, q2_, q1t_, q2t_;
};

/// Tanh-Gaussian SAC baseline with fixed entropy temperature alpha.
class GaussianTrainer final : public Trainer {
 public:
  GaussianTrainer(std::unique_ptr<envs::Env> env, TrainConfig cfg);

  VectorXd act(const VectorXd& state, bool deterministic, double* kappa_out) override;
  double critic_update(const ReplayBuffer::Batch& batch) override;
  double actor_update(const ReplayBuffer::Batch& batch) override;
  void soft_update_targets() override;
  void save_checkpoint(const std::string& path) const override;

  netcore::GaussianPolicy& policy() { return policy_; }
  /// Pre-squash components of every stochastic action taken, for the
  /// saturation probe.
  const std::vector<double>& pre_squash_log() const { return pre_squash_log_; }

 private:
  netcore::GaussianPolicy policy_;
  Rng critic_init_rng_;
  netcore::Mlp q1_, q2_, q1t_, q2t_;
  std::vector<double> pre_squash_log_;
};

/// Critic network shape shared by both trainers: (obs+act) -> 256 -> 256 -> 1.
netcore::Mlp make_critic(int obs_dim, int action_dim, Rng& init_rng);

/// Deterministic rollout loop shared by Trainer::evaluate and the `eval`
/// command so a recorded evaluation return can be reproduced exactly from a
/// checkpoint.
double deterministic_rollouts(envs::Env& env,
                              const std::function<VectorXd(const VectorXd&)>& act,
                              int episodes, double* mean_final_metric,
                              double* mean_step_reward);

}  // namespace gac::agent
