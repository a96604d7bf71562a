// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gac/agent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "gac/geometry.hpp"

namespace gac::agent {

using geometry::kNormFloor;

// ---------------------------------------------------------------------------
// ReplayBuffer

ReplayBuffer::ReplayBuffer(long capacity, int obs_dim, int action_dim)
    : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("ReplayBuffer: capacity must be >= 1");
  states_.resize(obs_dim, capacity);
  actions_.resize(action_dim, capacity);
  next_states_.resize(obs_dim, capacity);
  rewards_.resize(capacity);
  done_.resize(capacity);
}

void ReplayBuffer::push(const Transition& t) {
  if (!std::isfinite(t.reward)) throw std::invalid_argument("ReplayBuffer: non-finite reward");
  if (t.action.size() != actions_.rows())
    throw std::invalid_argument("ReplayBuffer: action width mismatch");
  states_.col(cursor_) = t.state;
  actions_.col(cursor_) = t.action;
  next_states_.col(cursor_) = t.next_state;
  rewards_(cursor_) = t.reward;
  done_(cursor_) = t.done ? 1.0 : 0.0;
  cursor_ = (cursor_ + 1) % capacity_;
  size_ = std::min(size_ + 1, capacity_);
}

Transition ReplayBuffer::at(long i) const {
  if (i < 0 || i >= size_) throw std::out_of_range("ReplayBuffer::at");
  // oldest-first indexing once the ring has wrapped
  const long phys = (size_ < capacity_) ? i : (cursor_ + i) % capacity_;
  Transition t;
  t.state = states_.col(phys);
  t.action = actions_.col(phys);
  t.next_state = next_states_.col(phys);
  t.reward = rewards_(phys);
  t.done = done_(phys) != 0.0;
  return t;
}

std::vector<long> ReplayBuffer::sample_indices(int batch_size, Rng& rng) const {
  if (batch_size < 1 || batch_size > size_)
    throw std::logic_error("ReplayBuffer: batch size exceeds stored transitions");
  // Floyd's algorithm: uniform subset without replacement.
  std::vector<long> picked;
  picked.reserve(batch_size);
  std::unordered_set<long> seen;
  for (long j = size_ - batch_size; j < size_; ++j) {
    const long t = static_cast<long>(rng.below(static_cast<std::uint64_t>(j + 1)));
    if (seen.insert(t).second) picked.push_back(t);
    else {
      seen.insert(j);
      picked.push_back(j);
    }
  }
  return picked;
}

ReplayBuffer::Batch ReplayBuffer::sample(int batch_size, Rng& rng) const {
  const auto idx = sample_indices(batch_size, rng);
  Batch b;
  b.states.resize(states_.rows(), batch_size);
  b.actions.resize(actions_.rows(), batch_size);
  b.next_states.resize(next_states_.rows(), batch_size);
  b.rewards.resize(batch_size);
  b.done.resize(batch_size);
  for (int k = 0; k < batch_size; ++k) {
    const long phys = (size_ < capacity_) ? idx[k] : (cursor_ + idx[k]) % capacity_;
    b.states.col(k) = states_.col(phys);
    b.actions.col(k) = actions_.col(phys);
    b.next_states.col(k) = next_states_.col(phys);
    b.rewards(k) = rewards_(phys);
    b.done(k) = done_(phys);
  }
  return b;
}

// ---------------------------------------------------------------------------
// Config / report helpers

void TrainConfig::validate() const {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("config: 0 <= gamma < 1");
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("config: 0 < tau <= 1");
  if (batch < 1) throw std::invalid_argument("config: batch must be >= 1");
  if (radius <= 0.0) throw std::invalid_argument("config: radius must be positive");
  if (steps < 0 || warmup < 0) throw std::invalid_argument("config: negative step counts");
  if (buffer_capacity < batch) throw std::invalid_argument("config: buffer smaller than batch");
  if (log_window < 1) throw std::invalid_argument("config: log_window must be >= 1");
}

double final_window_metric(const TrainReport& report, long window_steps) {
  double sum = 0;
  long n = 0;
  for (const auto& e : report.episodes) {
    if (e.end_step > report.steps_run - window_steps) {
      sum += e.final_metric;
      ++n;
    }
  }
  return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(n);
}

double final_window_return(const TrainReport& report, long window_steps) {
  double sum = 0;
  long n = 0;
  for (const auto& e : report.episodes) {
    if (e.end_step > report.steps_run - window_steps) {
      sum += e.ret;
      ++n;
    }
  }
  return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Trainer

netcore::Mlp make_critic(int obs_dim, int action_dim, Rng& init_rng) {
  using netcore::Activation;
  return netcore::Mlp({{obs_dim + action_dim, 256, Activation::kRelu},
                       {256, 256, Activation::kRelu},
                       {256, 1, Activation::kIdentity}},
                      init_rng);
}

Trainer::Trainer(std::unique_ptr<envs::Env> env, TrainConfig cfg)
    : env_(std::move(env)),
      cfg_(cfg),
      replay_(cfg.buffer_capacity, env_->spec().observation_dim, env_->spec().action_dim),
      noise_rng_(cfg.seed, "noise"),
      warmup_rng_(cfg.seed, "warmup"),
      replay_rng_(cfg.seed, "replay-sampling") {
  cfg_.validate();
}

TrainReport Trainer::run() {
  const auto& spec = env_->spec();
  report_ = TrainReport{};
  VectorXd obs = env_->reset();
  double episode_return = 0;

  // rolling window accumulators
  double w_actor = 0, w_critic = 0, w_kappa_sum = 0;
  double w_kappa_min = std::numeric_limits<double>::infinity();
  double w_kappa_max = -std::numeric_limits<double>::infinity();
  long w_updates = 0, w_kappa_n = 0;
  double w_ret_sum = 0;
  long w_ret_n = 0;
  auto flush_window = [&](long step) {
    TrainReport::WindowRow row;
    row.step = step;
    row.actor_loss = w_updates ? w_actor / static_cast<double>(w_updates) : 0.0;
    row.critic_loss = w_updates ? w_critic / static_cast<double>(w_updates) : 0.0;
    row.kappa_mean = w_kappa_n ? w_kappa_sum / static_cast<double>(w_kappa_n) : 0.0;
    row.kappa_min = w_kappa_n ? w_kappa_min : 0.0;
    row.kappa_max = w_kappa_n ? w_kappa_max : 0.0;
    row.has_return = w_ret_n > 0;
    row.episode_return = w_ret_n ? w_ret_sum / static_cast<double>(w_ret_n) : 0.0;
    report_.windows.push_back(row);
    w_actor = w_critic = w_kappa_sum = 0;
    w_kappa_min = std::numeric_limits<double>::infinity();
    w_kappa_max = -std::numeric_limits<double>::infinity();
    w_updates = w_kappa_n = 0;
    w_ret_sum = 0;
    w_ret_n = 0;
  };

  for (long step = 1; step <= cfg_.steps; ++step) {
    VectorXd action;
    double kappa = 0;
    if (step <= cfg_.warmup) {
      action.resize(spec.action_dim);
      for (int i = 0; i < spec.action_dim; ++i)
        action(i) = warmup_rng_.uniform(spec.action_low(i), spec.action_high(i));
    } else {
      action = act(obs, /*deterministic=*/false, &kappa);
      report_.kappa_values.push_back(kappa);
      if (!std::isfinite(kappa) || !action.allFinite()) {
        report_.status = TrainReport::Status::kDiverged;
        report_.diverged_step = step;
        report_.steps_run = step;
        return report_;
      }
      w_kappa_sum += kappa;
      w_kappa_min = std::min(w_kappa_min, kappa);
      w_kappa_max = std::max(w_kappa_max, kappa);
      ++w_kappa_n;
    }

    const envs::StepResult sr = env_->step(action);
    episode_return += sr.reward;

    Transition t;
    t.state = obs;
    t.action = action;
    t.reward = sr.reward;
    t.next_state = sr.observation;
    t.done = sr.terminated;  // truncation still bootstraps
    replay_.push(t);

    if (sr.terminated || sr.truncated) {
      report_.episodes.push_back({step, episode_return, env_->task_metric()});
      w_ret_sum += episode_return;
      ++w_ret_n;
      episode_return = 0;
      obs = env_->reset();
    } else {
      obs = sr.observation;
    }

    if (step > cfg_.warmup && replay_.size() >= cfg_.batch) {
      try {
        const ReplayBuffer::Batch batch = replay_.sample(cfg_.batch, replay_rng_);
        const double closs = critic_update(batch);
        const double aloss = actor_update(batch);
        soft_update_targets();
        if (!std::isfinite(closs) || !std::isfinite(aloss))
          throw netcore::DivergenceSignal("non-finite loss");
        report_.actor_losses.push_back(aloss);
        report_.critic_losses.push_back(closs);
        w_actor += aloss;
        w_critic += closs;
        ++w_updates;
      } catch (const netcore::DivergenceSignal&) {
        report_.status = TrainReport::Status::kDiverged;
        report_.diverged_step = step;
        report_.steps_run = step;
        flush_window(step);
        return report_;
      }
    }

    if (step % cfg_.log_window == 0) flush_window(step);
  }
  if (cfg_.steps % cfg_.log_window != 0) flush_window(cfg_.steps);
  report_.steps_run = cfg_.steps;

  if (cfg_.eval_episodes > 0 && cfg_.steps > 0) {
    double metric = 0, step_reward = 0;
    report_.eval_return = evaluate(cfg_.eval_episodes, &metric, &step_reward);
    report_.eval_final_metric = metric;
    report_.eval_mean_step_reward = step_reward;
  }
  return report_;
}

double deterministic_rollouts(envs::Env& env,
                              const std::function<VectorXd(const VectorXd&)>& act,
                              int episodes, double* mean_final_metric,
                              double* mean_step_reward) {
  double ret_sum = 0, metric_sum = 0, reward_sum = 0;
  long reward_n = 0;
  for (int e = 0; e < episodes; ++e) {
    VectorXd obs = env.reset();
    double ret = 0;
    for (;;) {
      const envs::StepResult sr = env.step(act(obs));
      ret += sr.reward;
      reward_sum += sr.reward;
      ++reward_n;
      if (sr.terminated || sr.truncated) break;
      obs = sr.observation;
    }
    ret_sum += ret;
    metric_sum += env.task_metric();
  }
  if (mean_final_metric) *mean_final_metric = metric_sum / episodes;
  if (mean_step_reward) *mean_step_reward = reward_sum / static_cast<double>(reward_n);
  return ret_sum / episodes;
}

double Trainer::evaluate(int episodes, double* mean_final_metric, double* mean_step_reward) {
  const auto& spec = env_->spec();
  const double r_star =
      spec.name == "directional-shell"
          ? dynamic_cast<envs::DirectionalShellEnv&>(*env_).r_star()
          : 1.0;
  auto eval_env = envs::make_env(spec.name, spec.action_dim, r_star,
                                 derive_stream_seed(cfg_.seed, "eval"));
  return deterministic_rollouts(
      *eval_env, [this](const VectorXd& s) { return act(s, /*deterministic=*/true, nullptr); },
      episodes, mean_final_metric, mean_step_reward);
}

// ---------------------------------------------------------------------------
// GacTrainer

GacTrainer::GacTrainer(std::unique_ptr<envs::Env> env_in, TrainConfig cfg)
    : Trainer(std::move(env_in), cfg),
      policy_([&] {
        Rng init(cfg_.seed, "policy-init");
        return netcore::GacPolicy(env_->spec().observation_dim, env_->spec().action_dim, init);
      }()),
      critic_init_rng_(cfg_.seed, "critic-init"),
      q1_(make_critic(env_->spec().observation_dim, env_->spec().action_dim, critic_init_rng_)),
      q2_(make_critic(env_->spec().observation_dim, env_->spec().action_dim, critic_init_rng_)),
      q1t_(q1_),
      q2t_(q2_) {}

VectorXd GacTrainer::act(const VectorXd& state, bool deterministic, double* kappa_out) {
  const auto fwd = policy_.forward(state);
  if (fwd.any_degenerate) report_.degenerate_direction_seen = true;
  const double kappa = fwd.kappa(0);
  if (kappa_out) *kappa_out = kappa;
  if (deterministic) {
    // evaluation mode: w treated as 1, action = r * mu(s)
    return cfg_.radius * fwd.mu.col(0);
  }
  VectorXd action(policy_.action_dim());
  if (cfg_.no_kappa || cfg_.no_normalize) {
    const double w = cfg_.no_kappa ? geometry::mixing_weight(1.0) : geometry::mixing_weight(kappa);
    VectorXd xi = geometry::sample_uniform_sphere(policy_.action_dim(), noise_rng_);
    VectorXd v = w * fwd.mu.col(0) + (1.0 - w) * xi;
    if (cfg_.no_normalize) {
      action = cfg_.radius * v;
    } else {
      action = cfg_.radius * v / std::max(v.norm(), kNormFloor);
    }
  } else {
    geometry::mix_action(fwd.mu.col(0).data(), kappa, cfg_.radius, policy_.action_dim(),
                         noise_rng_, action.data());
  }
  if (std::abs(action.norm() - cfg_.radius) > 1e-6 * std::max(1.0, cfg_.radius))
    report_.unbounded_action = true;
  return action;
}

VectorXd GacTrainer::act_recorded(const VectorXd& state, geometry::MixRecord* record) {
  const auto fwd = policy_.forward(state);
  const VectorXd xi = geometry::sample_uniform_sphere(policy_.action_dim(), noise_rng_);
  const double kappa = cfg_.no_kappa ? 1.0 : fwd.kappa(0);
  geometry::MixRecord rec = geometry::spherical_mix(fwd.mu.col(0), kappa, xi, cfg_.radius);
  if (record) *record = rec;
  return rec.action;
}

GacTrainer::MixBatch GacTrainer::mix_batch(const netcore::GacPolicy::Forward& fwd) {
  const int d = policy_.action_dim();
  const int batch = static_cast<int>(fwd.mu.cols());
  MixBatch m;
  m.xi.resize(d, batch);
  for (int c = 0; c < batch; ++c)
    geometry::sample_uniform_sphere(d, noise_rng_, m.xi.col(c).data());
  m.weight.resize(batch);
  for (int c = 0; c < batch; ++c)
    m.weight(c) = cfg_.no_kappa ? geometry::mixing_weight(1.0)
                                : geometry::mixing_weight(fwd.kappa(c));
  m.v.resize(d, batch);
  m.mix_norm.resize(batch);
  m.actions.resize(d, batch);
  for (int c = 0; c < batch; ++c) {
    m.v.col(c) = m.weight(c) * fwd.mu.col(c) + (1.0 - m.weight(c)) * m.xi.col(c);
    m.mix_norm(c) = std::max(m.v.col(c).norm(), kNormFloor);
    if (cfg_.no_normalize) m.actions.col(c) = cfg_.radius * m.v.col(c);
    else m.actions.col(c) = (cfg_.radius / m.mix_norm(c)) * m.v.col(c);
  }
  return m;
}

VectorXd GacTrainer::critic_targets(const ReplayBuffer::Batch& batch) {
  const auto fwd = policy_.forward(batch.next_states);
  const MixBatch mix = mix_batch(fwd);
  const int b = static_cast<int>(batch.rewards.size());
  MatrixXd qin(batch.next_states.rows() + mix.actions.rows(), b);
  qin << batch.next_states, mix.actions;
  const VectorXd q1 = q1t_.forward(qin).row(0).transpose();
  const VectorXd q2 = q2t_.forward(qin).row(0).transpose();
  VectorXd y(b);
  for (int c = 0; c < b; ++c) {
    double boot = std::min(q1(c), q2(c));
    if (!cfg_.no_kappa) boot -= fwd.kappa(c);
    y(c) = batch.rewards(c) + cfg_.gamma * (1.0 - batch.done(c)) * boot;
  }
  return y;
}

double GacTrainer::critic_update(const ReplayBuffer::Batch& batch) {
  const VectorXd y = critic_targets(batch);
  const int b = static_cast<int>(batch.rewards.size());
  MatrixXd qin(batch.states.rows() + batch.actions.rows(), b);
  qin << batch.states, batch.actions;

  const auto c1 = q1_.forward_cached(qin);
  const auto c2 = q2_.forward_cached(qin);
  const VectorXd p1 = c1.post.back().row(0).transpose();
  const VectorXd p2 = c2.post.back().row(0).transpose();
  const VectorXd e1 = p1 - y;
  const VectorXd e2 = p2 - y;
  const double loss = (e1.squaredNorm() + e2.squaredNorm()) / static_cast<double>(b);

  const netcore::AdamConfig opt{cfg_.critic_lr, 0.9, 0.999, 1e-8};
  MatrixXd g1 = (2.0 / b) * e1.transpose();
  MatrixXd g2 = (2.0 / b) * e2.transpose();
  q1_.backward(c1, g1);
  q2_.backward(c2, g2);
  q1_.adam_step(opt);
  q2_.adam_step(opt);
  return loss;
}

double GacTrainer::actor_update(const ReplayBuffer::Batch& batch) {
  const int b = static_cast<int>(batch.states.cols());
  const int d = policy_.action_dim();
  const auto fwd = policy_.forward(batch.states);
  const MixBatch mix = mix_batch(fwd);

  MatrixXd qin(batch.states.rows() + d, b);
  qin << batch.states, mix.actions;
  const auto c1 = q1_.forward_cached(qin);
  const auto c2 = q2_.forward_cached(qin);
  const VectorXd q1v = c1.post.back().row(0).transpose();
  const VectorXd q2v = c2.post.back().row(0).transpose();

  double loss = 0;
  MatrixXd gq1 = MatrixXd::Zero(1, b), gq2 = MatrixXd::Zero(1, b);
  for (int c = 0; c < b; ++c) {
    const double qmin = std::min(q1v(c), q2v(c));
    loss += -qmin;
    if (!cfg_.no_kappa) loss += -fwd.kappa(c);
    // d(loss)/d(qmin) = -1/B through the argmin critic
    if (q1v(c) <= q2v(c)) gq1(0, c) = -1.0 / b;
    else gq2(0, c) = -1.0 / b;
  }
  loss /= b;

  // critics frozen: input gradients only
  const MatrixXd gin = q1_.backward_input_only(c1, gq1) + q2_.backward_input_only(c2, gq2);
  const MatrixXd grad_a = gin.bottomRows(d);

  MatrixXd grad_mu(d, b);
  VectorXd grad_kappa = VectorXd::Zero(b);
  for (int c = 0; c < b; ++c) {
    VectorXd grad_v;
    if (cfg_.no_normalize) {
      grad_v = cfg_.radius * grad_a.col(c);
    } else {
      const VectorXd v_hat = mix.actions.col(c) / cfg_.radius;
      grad_v = (cfg_.radius / mix.mix_norm(c)) *
               (grad_a.col(c) - v_hat * v_hat.dot(grad_a.col(c)));
    }
    grad_mu.col(c) = mix.weight(c) * grad_v;
    if (!cfg_.no_kappa) {
      const double dw = mix.weight(c) * (1.0 - mix.weight(c));
      grad_kappa(c) = dw * (fwd.mu.col(c) - mix.xi.col(c)).dot(grad_v) - 1.0 / b;
    }
  }

  policy_.backward(fwd, grad_mu, grad_kappa);
  policy_.adam_step({cfg_.actor_lr, 0.9, 0.999, 1e-8});
  return loss;
}

void GacTrainer::soft_update_targets() {
  netcore::Mlp::soft_update(q1_, q1t_, cfg_.tau);
  netcore::Mlp::soft_update(q2_, q2t_, cfg_.tau);
}

void GacTrainer::save_checkpoint(const std::string& path) const {
  netcore::save_networks(path, {{"policy.backbone", &policy_.backbone()},
                                {"policy.dir_head", &policy_.dir_head()},
                                {"policy.kappa_head", &policy_.kappa_head()},
                                {"q1", &q1_},
                                {"q2", &q2_}});
}

// ---------------------------------------------------------------------------
// GaussianTrainer

GaussianTrainer::GaussianTrainer(std::unique_ptr<envs::Env> env_in, TrainConfig cfg)
    : Trainer(std::move(env_in), cfg),
      policy_([&] {
        Rng init(cfg_.seed, "policy-init");
        return netcore::GaussianPolicy(env_->spec().observation_dim, env_->spec().action_dim,
                                       init);
      }()),
      critic_init_rng_(cfg_.seed, "critic-init"),
      q1_(make_critic(env_->spec().observation_dim, env_->spec().action_dim, critic_init_rng_)),
      q2_(make_critic(env_->spec().observation_dim, env_->spec().action_dim, critic_init_rng_)),
      q1t_(q1_),
      q2t_(q2_) {}

VectorXd GaussianTrainer::act(const VectorXd& state, bool deterministic, double* kappa_out) {
  if (kappa_out) *kappa_out = 0.0;  // no concentration head in the baseline
  const auto fwd = policy_.forward(state);
  if (deterministic) return policy_.mean_action(fwd).col(0);
  const auto smp = policy_.sample(fwd, noise_rng_);
  for (int r = 0; r < smp.pre_squash.rows(); ++r)
    pre_squash_log_.push_back(smp.pre_squash(r, 0));
  return smp.action.col(0);
}

double GaussianTrainer::critic_update(const ReplayBuffer::Batch& batch) {
  const int b = static_cast<int>(batch.rewards.size());
  const auto fwd = policy_.forward(batch.next_states);
  const auto smp = policy_.sample(fwd, noise_rng_);
  MatrixXd qin(batch.next_states.rows() + smp.action.rows(), b);
  qin << batch.next_states, smp.action;
  const VectorXd q1 = q1t_.forward(qin).row(0).transpose();
  const VectorXd q2 = q2t_.forward(qin).row(0).transpose();
  VectorXd y(b);
  for (int c = 0; c < b; ++c) {
    const double boot = std::min(q1(c), q2(c)) - cfg_.alpha * smp.log_prob(c);
    y(c) = batch.rewards(c) + cfg_.gamma * (1.0 - batch.done(c)) * boot;
  }

  MatrixXd qin2(batch.states.rows() + batch.actions.rows(), b);
  qin2 << batch.states, batch.actions;
  const auto c1 = q1_.forward_cached(qin2);
  const auto c2 = q2_.forward_cached(qin2);
  const VectorXd e1 = c1.post.back().row(0).transpose() - y;
  const VectorXd e2 = c2.post.back().row(0).transpose() - y;
  const double loss = (e1.squaredNorm() + e2.squaredNorm()) / static_cast<double>(b);
  const netcore::AdamConfig opt{cfg_.critic_lr, 0.9, 0.999, 1e-8};
  MatrixXd g1 = (2.0 / b) * e1.transpose();
  MatrixXd g2 = (2.0 / b) * e2.transpose();
  q1_.backward(c1, g1);
  q2_.backward(c2, g2);
  q1_.adam_step(opt);
  q2_.adam_step(opt);
  return loss;
}

double GaussianTrainer::actor_update(const ReplayBuffer::Batch& batch) {
  const int b = static_cast<int>(batch.states.cols());
  const int d = policy_.action_dim();
  const auto fwd = policy_.forward(batch.states);
  const auto smp = policy_.sample(fwd, noise_rng_);

  MatrixXd qin(batch.states.rows() + d, b);
  qin << batch.states, smp.action;
  const auto c1 = q1_.forward_cached(qin);
  const auto c2 = q2_.forward_cached(qin);
  const VectorXd q1v = c1.post.back().row(0).transpose();
  const VectorXd q2v = c2.post.back().row(0).transpose();

  double loss = 0;
  MatrixXd gq1 = MatrixXd::Zero(1, b), gq2 = MatrixXd::Zero(1, b);
  for (int c = 0; c < b; ++c) {
    loss += cfg_.alpha * smp.log_prob(c) - std::min(q1v(c), q2v(c));
    if (q1v(c) <= q2v(c)) gq1(0, c) = -1.0 / b;
    else gq2(0, c) = -1.0 / b;
  }
  loss /= b;

  const MatrixXd gin = q1_.backward_input_only(c1, gq1) + q2_.backward_input_only(c2, gq2);
  const MatrixXd grad_a = gin.bottomRows(d);
  const VectorXd grad_log_prob = VectorXd::Constant(b, cfg_.alpha / b);
  policy_.backward(fwd, smp, grad_a, grad_log_prob);
  policy_.adam_step({cfg_.actor_lr, 0.9, 0.999, 1e-8});
  return loss;
}

void GaussianTrainer::soft_update_targets() {
  netcore::Mlp::soft_update(q1_, q1t_, cfg_.tau);
  netcore::Mlp::soft_update(q2_, q2t_, cfg_.tau);
}

void GaussianTrainer::save_checkpoint(const std::string& path) const {
  netcore::save_networks(path, {{"policy.backbone", &policy_.backbone()},
                                {"policy.head", &policy_.head()},
                                {"q1", &q1_},
                                {"q2", &q2_}});
}

}  // namespace gac::agent
