// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gac/netcore.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace gac::netcore {

namespace {

inline void apply_activation(Activation act, MatrixXd& m) {
  if (act == Activation::kRelu) m = m.cwiseMax(0.0);
}

// Rectified-linear derivative with the subgradient at 0 chosen as 0.
inline MatrixXd activation_grad(Activation act, const MatrixXd& pre, const MatrixXd& g) {
  if (act == Activation::kIdentity) return g;
  return (pre.array() > 0.0).select(g, MatrixXd::Zero(g.rows(), g.cols()));
}

}  // namespace

Mlp::Mlp(std::vector<LayerSpec> specs, Rng& init_rng) {
  if (specs.empty()) throw std::invalid_argument("Mlp: at least one layer required");
  layers_.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto& s = specs[i];
    if (s.in_width < 1 || s.out_width < 1)
      throw std::invalid_argument("Mlp: layer widths must be >= 1");
    if (i > 0 && specs[i - 1].out_width != s.in_width)
      throw std::invalid_argument("Mlp: consecutive layer widths do not chain");
    Layer l;
    l.activation = s.activation;
    l.weight.resize(s.out_width, s.in_width);
    const double bound = 1.0 / std::sqrt(static_cast<double>(s.in_width));
    for (int r = 0; r < l.weight.rows(); ++r)
      for (int c = 0; c < l.weight.cols(); ++c)
        l.weight(r, c) = init_rng.uniform(-bound, bound);
    l.bias = VectorXd::Zero(s.out_width);
    l.grad_weight = MatrixXd::Zero(s.out_width, s.in_width);
    l.grad_bias = VectorXd::Zero(s.out_width);
    l.m_weight = MatrixXd::Zero(s.out_width, s.in_width);
    l.v_weight = MatrixXd::Zero(s.out_width, s.in_width);
    l.m_bias = VectorXd::Zero(s.out_width);
    l.v_bias = VectorXd::Zero(s.out_width);
    layers_.push_back(std::move(l));
  }
}

MatrixXd Mlp::forward(const MatrixXd& x) const {
  if (x.rows() != input_width())
    throw std::invalid_argument("Mlp::forward: input width mismatch");
  MatrixXd h = x;
  for (const auto& l : layers_) {
    MatrixXd pre = (l.weight * h).colwise() + l.bias;
    apply_activation(l.activation, pre);
    h = std::move(pre);
  }
  return h;
}

Mlp::Cache Mlp::forward_cached(const MatrixXd& x) const {
  if (x.rows() != input_width())
    throw std::invalid_argument("Mlp::forward_cached: input width mismatch");
  Cache c;
  c.input = x;
  c.pre.reserve(layers_.size());
  c.post.reserve(layers_.size());
  const MatrixXd* h = &c.input;
  for (const auto& l : layers_) {
    c.pre.emplace_back((l.weight * (*h)).colwise() + l.bias);
    MatrixXd post = c.pre.back();
    apply_activation(l.activation, post);
    c.post.push_back(std::move(post));
    h = &c.post.back();
  }
  return c;
}

MatrixXd Mlp::backward(const Cache& cache, const MatrixXd& grad_output) {
  if (cache.post.size() != layers_.size())
    throw std::logic_error("Mlp::backward: cache does not match this network");
  MatrixXd g = grad_output;
  for (int i = static_cast<int>(layers_.size()) - 1; i >= 0; --i) {
    Layer& l = layers_[static_cast<std::size_t>(i)];
    g = activation_grad(l.activation, cache.pre[static_cast<std::size_t>(i)], g);
    const MatrixXd& in = (i == 0) ? cache.input : cache.post[static_cast<std::size_t>(i - 1)];
    l.grad_weight.noalias() += g * in.transpose();
    l.grad_bias.noalias() += g.rowwise().sum();
    g = l.weight.transpose() * g;
  }
  return g;
}

MatrixXd Mlp::backward_input_only(const Cache& cache, const MatrixXd& grad_output) const {
  if (cache.post.size() != layers_.size())
    throw std::logic_error("Mlp::backward_input_only: cache mismatch");
  MatrixXd g = grad_output;
  for (int i = static_cast<int>(layers_.size()) - 1; i >= 0; --i) {
    const Layer& l = layers_[static_cast<std::size_t>(i)];
    g = activation_grad(l.activation, cache.pre[static_cast<std::size_t>(i)], g);
    g = l.weight.transpose() * g;
  }
  return g;
}

void Mlp::adam_step(const AdamConfig& cfg) {
  for (const auto& l : layers_) {
    if (!l.grad_weight.allFinite() || !l.grad_bias.allFinite())
      throw DivergenceSignal("adam_step: non-finite gradient");
  }
  ++adam_steps_;
  const double t = static_cast<double>(adam_steps_);
  const double bc1 = 1.0 - std::pow(cfg.beta1, t);
  const double bc2 = 1.0 - std::pow(cfg.beta2, t);
  for (auto& l : layers_) {
    l.m_weight = cfg.beta1 * l.m_weight + (1.0 - cfg.beta1) * l.grad_weight;
    l.v_weight = cfg.beta2 * l.v_weight +
                 (1.0 - cfg.beta2) * l.grad_weight.cwiseProduct(l.grad_weight);
    l.m_bias = cfg.beta1 * l.m_bias + (1.0 - cfg.beta1) * l.grad_bias;
    l.v_bias = cfg.beta2 * l.v_bias + (1.0 - cfg.beta2) * l.grad_bias.cwiseProduct(l.grad_bias);
    l.weight.array() -=
        cfg.lr * (l.m_weight.array() / bc1) / ((l.v_weight.array() / bc2).sqrt() + cfg.eps);
    l.bias.array() -=
        cfg.lr * (l.m_bias.array() / bc1) / ((l.v_bias.array() / bc2).sqrt() + cfg.eps);
  }
  zero_grads();
}

void Mlp::zero_grads() {
  for (auto& l : layers_) {
    l.grad_weight.setZero();
    l.grad_bias.setZero();
  }
}

void Mlp::soft_update(const Mlp& source, Mlp& target, double tau) {
  if (source.layers_.size() != target.layers_.size())
    throw std::invalid_argument("soft_update: network shapes differ");
  for (std::size_t i = 0; i < source.layers_.size(); ++i) {
    target.layers_[i].weight = tau * source.layers_[i].weight + (1.0 - tau) * target.layers_[i].weight;
    target.layers_[i].bias = tau * source.layers_[i].bias + (1.0 - tau) * target.layers_[i].bias;
  }
}

long Mlp::parameter_count() const {
  long n = 0;
  for (const auto& l : layers_) n += l.weight.size() + l.bias.size();
  return n;
}

// ---------------------------------------------------------------------------
// Checkpoint I/O: GACNET1 layout, little-endian.

namespace {

constexpr char kMagic[8] = {'G', 'A', 'C', 'N', 'E', 'T', '1', '\n'};

template <typename T>
void write_pod(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("checkpoint: truncated stream");
  return v;
}

}  // namespace

void save_networks(std::ostream& os,
                   const std::vector<std::pair<std::string, const Mlp*>>& nets) {
  os.write(kMagic, sizeof(kMagic));
  write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(nets.size()));
  for (const auto& [name, net] : nets) {
    write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(name.size()));
    os.write(name.data(), static_cast<std::streamsize>(name.size()));
    write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(net->layers().size()));
    for (const auto& l : net->layers()) {
      write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(l.weight.cols()));
      write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(l.weight.rows()));
      write_pod<std::uint8_t>(os, static_cast<std::uint8_t>(l.activation));
      // row-major f64 weights
      for (int r = 0; r < l.weight.rows(); ++r)
        for (int c = 0; c < l.weight.cols(); ++c) write_pod<double>(os, l.weight(r, c));
      for (int r = 0; r < l.bias.size(); ++r) write_pod<double>(os, l.bias(r));
    }
  }
}

void save_networks(const std::string& path,
                   const std::vector<std::pair<std::string, const Mlp*>>& nets) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
  save_networks(os, nets);
  if (!os) throw std::runtime_error("checkpoint: write failed for " + path);
}

std::map<std::string, Mlp> load_networks(std::istream& is) {
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("checkpoint: bad magic (expected GACNET1)");
  const auto count = read_pod<std::uint32_t>(is);
  std::map<std::string, Mlp> out;
  Rng dummy(0);
  for (std::uint32_t i = 0; i < count; ++i) {
    const auto name_len = read_pod<std::uint32_t>(is);
    std::string name(name_len, '\0');
    is.read(name.data(), name_len);
    const auto n_layers = read_pod<std::uint32_t>(is);
    std::vector<LayerSpec> specs;
    std::vector<MatrixXd> weights;
    std::vector<VectorXd> biases;
    for (std::uint32_t j = 0; j < n_layers; ++j) {
      const auto in_w = read_pod<std::uint32_t>(is);
      const auto out_w = read_pod<std::uint32_t>(is);
      const auto act = static_cast<Activation>(read_pod<std::uint8_t>(is));
      specs.push_back({static_cast<int>(in_w), static_cast<int>(out_w), act});
      MatrixXd w(out_w, in_w);
      for (std::uint32_t r = 0; r < out_w; ++r)
        for (std::uint32_t c = 0; c < in_w; ++c) w(r, c) = read_pod<double>(is);
      VectorXd b(out_w);
      for (std::uint32_t r = 0; r < out_w; ++r) b(r) = read_pod<double>(is);
      weights.push_back(std::move(w));
      biases.push_back(std::move(b));
    }
    Mlp net(specs, dummy);
    for (std::size_t j = 0; j < specs.size(); ++j) {
      net.layers()[j].weight = std::move(weights[j]);
      net.layers()[j].bias = std::move(biases[j]);
    }
    out.emplace(std::move(name), std::move(net));
  }
  return out;
}

std::map<std::string, Mlp> load_networks(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
  return load_networks(is);
}

// ---------------------------------------------------------------------------
// GacPolicy

namespace {
constexpr int kBackboneWidth = 256;
constexpr int kKappaHidden = 64;
}  // namespace

GacPolicy::GacPolicy(int obs_dim, int action_dim, Rng& init_rng)
    : backbone_({{obs_dim, kBackboneWidth, Activation::kRelu},
                 {kBackboneWidth, kBackboneWidth, Activation::kRelu}},
                init_rng),
      dir_head_({{kBackboneWidth, action_dim, Activation::kIdentity}}, init_rng),
      kappa_head_({{kBackboneWidth, kKappaHidden, Activation::kRelu},
                   {kKappaHidden, 1, Activation::kIdentity}},
                  init_rng) {
  if (action_dim < 2) throw std::invalid_argument("GacPolicy: action_dim must be >= 2");
}

GacPolicy::GacPolicy(Mlp backbone, Mlp dir_head, Mlp kappa_head)
    : backbone_(std::move(backbone)),
      dir_head_(std::move(dir_head)),
      kappa_head_(std::move(kappa_head)) {}

GacPolicy::Forward GacPolicy::forward(const MatrixXd& states) const {
  Forward f;
  f.backbone = backbone_.forward_cached(states);
  const MatrixXd& features = f.backbone.post.back();
  f.dir = dir_head_.forward_cached(features);
  f.kappa_head = kappa_head_.forward_cached(features);
  f.dir_logits = f.dir.post.back();
  f.kappa = f.kappa_head.post.back().row(0).transpose();

  const int d = static_cast<int>(f.dir_logits.rows());
  const int batch = static_cast<int>(f.dir_logits.cols());
  f.mu.resize(d, batch);
  f.dir_norm.resize(batch);
  f.degenerate.assign(static_cast<std::size_t>(batch), 0);
  for (int c = 0; c < batch; ++c) {
    const double raw = f.dir_logits.col(c).norm();
    const double denom = std::max(raw, geometry::kNormFloor);
    f.mu.col(c) = f.dir_logits.col(c) / denom;
    f.dir_norm(c) = denom;
    if (raw < geometry::kNormFloor) {
      f.degenerate[static_cast<std::size_t>(c)] = 1;
      f.any_degenerate = true;
    }
  }
  return f;
}

void GacPolicy::backward(const Forward& fwd, const MatrixXd& grad_mu,
                         const VectorXd& grad_kappa) {
  const int batch = static_cast<int>(grad_mu.cols());
  MatrixXd grad_logits(grad_mu.rows(), batch);
  for (int c = 0; c < batch; ++c) {
    // J(x) = (I - mu mu^T) / ||x||; projection is idempotent, so feeding an
    // already-projected gradient through here stays correct.
    const auto mu_c = fwd.mu.col(c);
    grad_logits.col(c) =
        (grad_mu.col(c) - mu_c * mu_c.dot(grad_mu.col(c))) / fwd.dir_norm(c);
  }
  MatrixXd grad_features = dir_head_.backward(fwd.dir, grad_logits);
  MatrixXd grad_kappa_mat = grad_kappa.transpose();
  grad_features.noalias() += kappa_head_.backward(fwd.kappa_head, grad_kappa_mat);
  backbone_.backward(fwd.backbone, grad_features);
}

void GacPolicy::adam_step(const AdamConfig& cfg) {
  backbone_.adam_step(cfg);
  dir_head_.adam_step(cfg);
  kappa_head_.adam_step(cfg);
}

void GacPolicy::zero_grads() {
  backbone_.zero_grads();
  dir_head_.zero_grads();
  kappa_head_.zero_grads();
}

// ---------------------------------------------------------------------------
// GaussianPolicy

GaussianPolicy::GaussianPolicy(int obs_dim, int action_dim, Rng& init_rng)
    : backbone_({{obs_dim, kBackboneWidth, Activation::kRelu},
                 {kBackboneWidth, kBackboneWidth, Activation::kRelu}},
                init_rng),
      head_({{kBackboneWidth, 2 * action_dim, Activation::kIdentity}}, init_rng) {}

GaussianPolicy::GaussianPolicy(Mlp backbone, Mlp head)
    : backbone_(std::move(backbone)), head_(std::move(head)) {}

GaussianPolicy::Forward GaussianPolicy::forward(const MatrixXd& states) const {
  Forward f;
  f.backbone = backbone_.forward_cached(states);
  f.head = head_.forward_cached(f.backbone.post.back());
  const MatrixXd& out = f.head.post.back();
  const int d = static_cast<int>(out.rows()) / 2;
  f.mean = out.topRows(d);
  const MatrixXd raw_log_std = out.bottomRows(d);
  f.log_std = raw_log_std.cwiseMax(kLogStdMin).cwiseMin(kLogStdMax);
  f.clamp_mask = ((raw_log_std.array() > kLogStdMin) && (raw_log_std.array() < kLogStdMax))
                     .cast<double>()
                     .matrix();
  return f;
}

GaussianPolicy::Sample GaussianPolicy::sample(const Forward& fwd, Rng& rng) const {
  Sample s;
  const int d = static_cast<int>(fwd.mean.rows());
  const int batch = static_cast<int>(fwd.mean.cols());
  s.z.resize(d, batch);
  rng.fill_normal(s.z.data(), static_cast<std::size_t>(s.z.size()));
  const MatrixXd std_dev = fwd.log_std.array().exp().matrix();
  s.pre_squash = fwd.mean + std_dev.cwiseProduct(s.z);
  s.action = s.pre_squash.array().tanh().matrix();
  s.log_prob.resize(batch);
  constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;
  for (int c = 0; c < batch; ++c) {
    double lp = 0;
    for (int r = 0; r < d; ++r) {
      const double z = s.z(r, c);
      const double a = s.action(r, c);
      lp += -0.5 * z * z - kLogSqrt2Pi - fwd.log_std(r, c);
      lp -= std::log(1.0 - a * a + kSquashEps);  // tanh change of variables
    }
    s.log_prob(c) = lp;
  }
  return s;
}

MatrixXd GaussianPolicy::mean_action(const Forward& fwd) const {
  return fwd.mean.array().tanh().matrix();
}

void GaussianPolicy::backward(const Forward& fwd, const Sample& smp,
                              const MatrixXd& grad_action, const VectorXd& grad_log_prob) {
  const int d = static_cast<int>(fwd.mean.rows());
  const int batch = static_cast<int>(fwd.mean.cols());
  const MatrixXd std_dev = fwd.log_std.array().exp().matrix();

  MatrixXd grad_mean(d, batch), grad_log_std(d, batch);
  for (int c = 0; c < batch; ++c) {
    for (int r = 0; r < d; ++r) {
      const double a = smp.action(r, c);
      const double one_m_a2 = 1.0 - a * a;             // tanh'
      const double sz = std_dev(r, c) * smp.z(r, c);   // d(pre)/d(log_std)
      // action path: da/dmean = tanh', da/dlog_std = tanh' * std * z
      double gm = grad_action(r, c) * one_m_a2;
      double gs = grad_action(r, c) * one_m_a2 * sz;
      // log-prob path (z held fixed by reparameterization):
      //   d(logp)/dmean    = 2 a tanh' / (1 - a^2 + eps)
      //   d(logp)/dlog_std = -1 + 2 a tanh' * std * z / (1 - a^2 + eps)
      const double squash = 2.0 * a * one_m_a2 / (one_m_a2 + kSquashEps);
      gm += grad_log_prob(c) * squash;
      gs += grad_log_prob(c) * (-1.0 + squash * sz);
      grad_mean(r, c) = gm;
      grad_log_std(r, c) = gs;
    }
  }
  // hard clamp: zero gradient outside the clamp range
  grad_log_std = grad_log_std.cwiseProduct(fwd.clamp_mask);

  MatrixXd grad_head(2 * d, batch);
  grad_head.topRows(d) = grad_mean;
  grad_head.bottomRows(d) = grad_log_std;
  const MatrixXd grad_features = head_.backward(fwd.head, grad_head);
  backbone_.backward(fwd.backbone, grad_features);
}

void GaussianPolicy::adam_step(const AdamConfig& cfg) {
  backbone_.adam_step(cfg);
  head_.adam_step(cfg);
}

void GaussianPolicy::zero_grads() {
  backbone_.zero_grads();
  head_.zero_grads();
}

}  // namespace gac::netcore
