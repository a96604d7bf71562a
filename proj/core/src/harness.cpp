// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gac/harness.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "gac/analysis.hpp"
#include "gac/config.hpp"
#include "gac/csv.hpp"
#include "gac/manifest.hpp"
#include "gac/sha1.hpp"

namespace gac::harness {

namespace fs = std::filesystem;

namespace {

bool prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) return false;
  // probe writability
  const fs::path probe = fs::path(dir) / ".write-probe";
  std::ofstream os(probe);
  if (!os) return false;
  os.close();
  fs::remove(probe, ec);
  return true;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

int run_validate_concentration(const ConcentrationOpts& opts, const std::string& command_line) {
  if (!prepare_out_dir(opts.out_dir)) {
    std::cerr << "error: cannot write to output directory " << opts.out_dir << "\n";
    return kExitIo;
  }
  io::RunManifest man;
  man.command_line = command_line;
  man.seed = opts.seed;
  man.start_time = io::iso8601_utc_now();
  man.set("dim", static_cast<long>(opts.dim));
  man.set("samples", opts.samples);

  Rng rng(opts.seed, "concentration");
  const auto rows = analysis::concentration_table(opts.kappas, opts.dim, opts.samples, rng);

  const std::string csv_path = (fs::path(opts.out_dir) / "concentration.csv").string();
  io::CsvWriter csv(csv_path,
                    {"kappa", "weight", "concentration", "angle_std_deg", "n", "d", "seed"});
  for (const auto& r : rows) {
    csv.row()
        .add(r.kappa)
        .add(r.weight)
        .add(r.measured_concentration)
        .add(r.angle_std_deg)
        .add(opts.samples)
        .add(opts.dim)
        .add(static_cast<long>(opts.seed))
        .done();
  }
  csv.flush();

  man.outputs.push_back("concentration.csv");
  man.status = "completed";
  man.end_time = io::iso8601_utc_now();
  man.write((fs::path(opts.out_dir) / "manifest.txt").string());
  return kExitOk;
}

TrainOutcome run_train(const TrainOpts& opts, const std::string& command_line) {
  TrainOutcome out;
  if (!prepare_out_dir(opts.out_dir)) {
    std::cerr << "error: cannot write to output directory " << opts.out_dir << "\n";
    out.exit_code = kExitIo;
    return out;
  }

  io::RunManifest man;
  man.command_line = command_line;
  man.seed = opts.config.seed;
  man.start_time = io::iso8601_utc_now();
  man.set("env", opts.env_name);
  man.set("dim", static_cast<long>(opts.dim));
  man.set("policy", opts.policy);
  man.set("shell_r_star", opts.shell_r_star);
  man.set("radius", opts.config.radius);
  man.set("steps", opts.config.steps);
  man.set("warmup", opts.config.warmup);
  man.set("batch", static_cast<long>(opts.config.batch));
  man.set("gamma", opts.config.gamma);
  man.set("tau", opts.config.tau);
  man.set("actor_lr", opts.config.actor_lr);
  man.set("critic_lr", opts.config.critic_lr);
  man.set("alpha", opts.config.alpha);
  man.set("buffer", opts.config.buffer_capacity);
  man.set("no_kappa", bool_str(opts.config.no_kappa));
  man.set("no_normalize", bool_str(opts.config.no_normalize));
  man.set("eval_episodes", static_cast<long>(opts.config.eval_episodes));
  man.set("log_window", opts.config.log_window);

  auto env = envs::make_env(opts.env_name, opts.dim, opts.shell_r_star,
                            derive_stream_seed(opts.config.seed, "env"));
  std::unique_ptr<agent::Trainer> trainer;
  if (opts.policy == "gac")
    trainer = std::make_unique<agent::GacTrainer>(std::move(env), opts.config);
  else if (opts.policy == "gaussian")
    trainer = std::make_unique<agent::GaussianTrainer>(std::move(env), opts.config);
  else throw std::invalid_argument("unknown policy: " + opts.policy);

  out.report = trainer->run();
  const agent::TrainReport& rep = out.report;

  // train.csv: one row per log window
  const std::string train_csv = (fs::path(opts.out_dir) / "train.csv").string();
  {
    io::CsvWriter csv(train_csv, {"step", "actor_loss", "critic_loss", "kappa_mean",
                                  "kappa_min", "kappa_max", "episode_return"});
    for (const auto& w : rep.windows) {
      auto row = csv.row();
      row.add(w.step).add(w.actor_loss).add(w.critic_loss).add(w.kappa_mean).add(w.kappa_min).add(
          w.kappa_max);
      if (w.has_return) row.add(w.episode_return);
      else row.add_empty();
      row.done();
    }
  }
  man.outputs.push_back("train.csv");

  // episodes.csv: per-episode returns and final task metric
  {
    io::CsvWriter csv((fs::path(opts.out_dir) / "episodes.csv").string(),
                      {"end_step", "return", "final_metric"});
    for (const auto& e : rep.episodes) csv.row().add(e.end_step).add(e.ret).add(e.final_metric).done();
  }
  man.outputs.push_back("episodes.csv");

  if (opts.policy == "gaussian") {
    const auto& gt = dynamic_cast<agent::GaussianTrainer&>(*trainer);
    io::CsvWriter csv((fs::path(opts.out_dir) / "presquash.csv").string(), {"pre_squash"});
    for (double v : gt.pre_squash_log()) csv.row().add(v).done();
    man.outputs.push_back("presquash.csv");
  }

  const std::string ckpt = (fs::path(opts.out_dir) / "checkpoint.gacnet").string();
  trainer->save_checkpoint(ckpt);
  man.checkpoint_file = "checkpoint.gacnet";
  man.checkpoint_sha1 = io::git_blob_sha1_file(ckpt);

  if (opts.dump_trajectories) {
    // deterministic-mode rollouts on the eval stream
    const auto& spec = trainer->env().spec();
    auto traj_env = envs::make_env(opts.env_name, opts.dim, opts.shell_r_star,
                                   derive_stream_seed(opts.config.seed, "eval"));
    std::vector<std::string> cols = {"episode", "step"};
    for (int i = 0; i < spec.observation_dim; ++i) cols.push_back("obs_" + std::to_string(i));
    for (int i = 0; i < spec.action_dim; ++i) cols.push_back("action_" + std::to_string(i));
    cols.push_back("reward");
    io::CsvWriter csv((fs::path(opts.out_dir) / "trajectories.csv").string(), cols);
    for (int e = 0; e < opts.config.eval_episodes; ++e) {
      Eigen::VectorXd obs = traj_env->reset();
      for (int t = 0;; ++t) {
        const Eigen::VectorXd a = trainer->act(obs, true, nullptr);
        const envs::StepResult sr = traj_env->step(a);
        auto row = csv.row();
        row.add(static_cast<long>(e)).add(static_cast<long>(t));
        for (int i = 0; i < obs.size(); ++i) row.add(obs(i));
        for (int i = 0; i < a.size(); ++i) row.add(a(i));
        row.add(sr.reward);
        row.done();
        if (sr.terminated || sr.truncated) break;
        obs = sr.observation;
      }
    }
    man.outputs.push_back("trajectories.csv");
  }

  const bool diverged = rep.status == agent::TrainReport::Status::kDiverged;
  man.status = diverged ? "diverged" : "completed";
  if (diverged) man.set("diverged_step", rep.diverged_step);
  man.set("steps_run", rep.steps_run);
  man.set("unbounded_action", bool_str(rep.unbounded_action));
  man.set("degenerate_direction_seen", bool_str(rep.degenerate_direction_seen));
  if (std::isfinite(rep.eval_return)) {
    man.set("eval_return", rep.eval_return);
    man.set("eval_final_metric", rep.eval_final_metric);
    man.set("eval_mean_step_reward", rep.eval_mean_step_reward);
  }
  const double fw_ret = agent::final_window_return(rep, std::max<long>(rep.steps_run / 10, 1));
  const double fw_metric = agent::final_window_metric(rep, std::max<long>(rep.steps_run / 10, 1));
  if (std::isfinite(fw_ret)) man.set("final_window_return", fw_ret);
  if (std::isfinite(fw_metric)) man.set("final_window_metric", fw_metric);

  man.end_time = io::iso8601_utc_now();
  man.write((fs::path(opts.out_dir) / "manifest.txt").string());

  out.exit_code = diverged ? kExitDiverged : kExitOk;
  return out;
}

// ---------------------------------------------------------------------------
// ablate

namespace {

struct AblationJob {
  std::string variant;
  std::uint64_t seed = 0;
  TrainOpts opts;
};

struct AblationResult {
  std::string variant;
  std::uint64_t seed = 0;
  std::string status;
  double final_window_return = std::numeric_limits<double>::quiet_NaN();
  double eval_mean_step_reward = std::numeric_limits<double>::quiet_NaN();
};

void apply_config_key(TrainOpts& t, const std::string& key, const std::string& value) {
  auto to_bool = [&](const std::string& v) { return v == "true" || v == "1" || v == "yes"; };
  if (key == "env") t.env_name = value;
  else if (key == "dim") t.dim = std::stoi(value);
  else if (key == "policy") t.policy = value;
  else if (key == "shell_r_star") t.shell_r_star = std::stod(value);
  else if (key == "radius") t.config.radius = std::stod(value);
  else if (key == "steps") t.config.steps = std::stol(value);
  else if (key == "warmup") t.config.warmup = std::stol(value);
  else if (key == "batch") t.config.batch = std::stoi(value);
  else if (key == "gamma") t.config.gamma = std::stod(value);
  else if (key == "tau") t.config.tau = std::stod(value);
  else if (key == "actor_lr") t.config.actor_lr = std::stod(value);
  else if (key == "critic_lr") t.config.critic_lr = std::stod(value);
  else if (key == "alpha") t.config.alpha = std::stod(value);
  else if (key == "buffer") t.config.buffer_capacity = std::stol(value);
  else if (key == "no_kappa") t.config.no_kappa = to_bool(value);
  else if (key == "no_normalize") t.config.no_normalize = to_bool(value);
  else if (key == "eval_episodes") t.config.eval_episodes = std::stoi(value);
  else if (key == "log_window") t.config.log_window = std::stol(value);
  else if (key == "seeds") { /* handled by the caller */ }
  else throw std::runtime_error("ablate config: unknown key '" + key + "'");
}

}  // namespace

int run_ablate(const AblateOpts& opts, const std::string& command_line) {
  if (!prepare_out_dir(opts.out_dir)) {
    std::cerr << "error: cannot write to output directory " << opts.out_dir << "\n";
    return kExitIo;
  }
  io::ConfigFile cfg;
  try {
    cfg = io::parse_config_file(opts.config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }

  // base settings from the unnamed section
  TrainOpts base;
  base.env_name = "directional-shell";
  base.dim = 6;
  std::vector<std::uint64_t> seeds = {0};
  const auto* base_sec = cfg.find("");
  if (base_sec) {
    for (const auto& [k, v] : base_sec->values) {
      if (k == "seeds") seeds = io::parse_seed_list(v);
      else apply_config_key(base, k, v);
    }
  }

  std::vector<AblationJob> jobs;
  for (const auto& sec : cfg.sections) {
    if (sec.name.rfind("variant", 0) != 0) continue;
    std::string vname = sec.name.size() > 7 ? sec.name.substr(7) : "";
    if (!vname.empty() && vname.front() == ' ') vname.erase(0, 1);
    if (vname.empty()) vname = "default";
    auto vseeds = seeds;
    TrainOpts vo = base;
    for (const auto& [k, v] : sec.values) {
      if (k == "seeds") vseeds = io::parse_seed_list(v);
      else apply_config_key(vo, k, v);
    }
    for (auto s : vseeds) {
      AblationJob j;
      j.variant = vname;
      j.seed = s;
      j.opts = vo;
      j.opts.config.seed = s;
      j.opts.out_dir =
          (fs::path(opts.out_dir) / (vname + "-s" + std::to_string(s))).string();
      jobs.push_back(std::move(j));
    }
  }

  std::vector<AblationResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, std::min<int>(opts.jobs, static_cast<int>(jobs.size())));
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      const AblationJob& j = jobs[i];
      AblationResult r;
      r.variant = j.variant;
      r.seed = j.seed;
      try {
        const TrainOutcome oc =
            run_train(j.opts, command_line + " [" + j.variant + " seed " +
                                  std::to_string(j.seed) + "]");
        r.status = oc.report.status == agent::TrainReport::Status::kDiverged ? "diverged"
                                                                             : "completed";
        r.final_window_return = agent::final_window_return(
            oc.report, std::max<long>(oc.report.steps_run / 10, 1));
        r.eval_mean_step_reward = oc.report.eval_mean_step_reward;
      } catch (const std::exception& e) {
        r.status = std::string("error: ") + e.what();
      }
      results[i] = std::move(r);
    }
  };
  if (workers == 1) worker();
  else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  io::CsvWriter csv((fs::path(opts.out_dir) / "ablation.csv").string(),
                    {"variant", "seed", "kind", "status", "final_window_return",
                     "final_window_return_std", "eval_mean_step_reward"});
  for (const auto& r : results) {
    auto row = csv.row();
    row.add(r.variant).add(static_cast<long>(r.seed)).add(std::string("run")).add(r.status);
    row.add(r.final_window_return).add_empty();
    row.add(r.eval_mean_step_reward);
    row.done();
  }
  // aggregate rows per variant (completed runs only)
  std::vector<std::string> seen;
  for (const auto& r : results) {
    bool dup = false;
    for (const auto& s : seen) dup |= s == r.variant;
    if (dup) continue;
    seen.push_back(r.variant);
    double sum = 0, sq = 0;
    long n = 0;
    for (const auto& q : results)
      if (q.variant == r.variant && q.status == "completed" &&
          std::isfinite(q.final_window_return)) {
        sum += q.final_window_return;
        sq += q.final_window_return * q.final_window_return;
        ++n;
      }
    auto row = csv.row();
    row.add(r.variant).add_empty().add(std::string("aggregate"));
    if (n > 0) {
      const double mean = sum / static_cast<double>(n);
      const double var = n > 1 ? std::max(0.0, (sq - n * mean * mean) / (n - 1)) : 0.0;
      row.add(std::string("completed")).add(mean).add(std::sqrt(var)).add_empty();
    } else {
      row.add(std::string("no-completed-runs")).add_empty().add_empty().add_empty();
    }
    row.done();
  }

  io::RunManifest man;
  man.command_line = command_line;
  man.start_time = man.end_time = io::iso8601_utc_now();
  man.status = "completed";
  man.set("variants", static_cast<long>(seen.size()));
  man.set("runs", static_cast<long>(jobs.size()));
  man.outputs.push_back("ablation.csv");
  man.write((fs::path(opts.out_dir) / "manifest.txt").string());
  return kExitOk;
}

int run_saturation(const SaturationOpts& opts, const std::string& command_line) {
  if (!prepare_out_dir(opts.out_dir)) {
    std::cerr << "error: cannot write to output directory " << opts.out_dir << "\n";
    return kExitIo;
  }
  analysis::SaturationReport rep;
  std::string source;
  if (!opts.log_path.empty()) {
    std::ifstream is(opts.log_path);
    if (!is) {
      std::cerr << "error: cannot open log " << opts.log_path << "\n";
      return kExitIo;
    }
    std::vector<double> samples;
    std::string line;
    std::getline(is, line);  // header
    while (std::getline(is, line))
      if (!line.empty()) samples.push_back(std::stod(line));
    rep = analysis::policy_saturation(samples, opts.threshold);
    source = "policy-log";
  } else {
    Rng rng(opts.seed, "saturation");
    rep = analysis::tanh_saturation(opts.mean, opts.std_dev, opts.threshold, opts.samples, rng);
    source = "synthetic";
  }

  io::CsvWriter csv((fs::path(opts.out_dir) / "saturation.csv").string(),
                    {"source", "mean", "std", "threshold", "n", "mc_fraction",
                     "analytic_fraction", "seed"});
  auto row = csv.row();
  row.add(source);
  if (source == "synthetic") row.add(opts.mean).add(opts.std_dev);
  else row.add_empty().add_empty();
  row.add(rep.threshold).add(rep.n).add(rep.mc_fraction);
  if (source == "synthetic") row.add(rep.analytic_fraction);
  else row.add_empty();
  row.add(static_cast<long>(opts.seed));
  row.done();

  io::RunManifest man;
  man.command_line = command_line;
  man.seed = opts.seed;
  man.start_time = man.end_time = io::iso8601_utc_now();
  man.status = "completed";
  man.set("source", source);
  man.set("threshold", opts.threshold);
  man.outputs.push_back("saturation.csv");
  man.write((fs::path(opts.out_dir) / "manifest.txt").string());
  return kExitOk;
}

int run_bench_sampling(const BenchOpts& opts, const std::string& command_line) {
  if (!prepare_out_dir(opts.out_dir)) {
    std::cerr << "error: cannot write to output directory " << opts.out_dir << "\n";
    return kExitIo;
  }
  Rng rng(opts.seed, "bench");
  const auto rows = analysis::bench_sampling(opts.dim, opts.kappas, opts.samples, rng);
  io::CsvWriter csv((fs::path(opts.out_dir) / "vmf_bench.csv").string(),
                    {"kappa", "d", "n", "gac_ns_per_sample", "vmf_ns_per_sample",
                     "vmf_rejections_per_sample", "vmf_mean_resultant", "gac_speedup"});
  for (const auto& r : rows) {
    csv.row()
        .add(r.kappa)
        .add(r.d)
        .add(r.n)
        .add(r.gac_ns_per_sample)
        .add(r.vmf_ns_per_sample)
        .add(r.vmf_rejections_per_sample)
        .add(r.vmf_mean_resultant)
        .add(r.vmf_ns_per_sample / r.gac_ns_per_sample)
        .done();
  }
  io::RunManifest man;
  man.command_line = command_line;
  man.seed = opts.seed;
  man.start_time = man.end_time = io::iso8601_utc_now();
  man.status = "completed";
  man.set("dim", static_cast<long>(opts.dim));
  man.set("samples", opts.samples);
  man.outputs.push_back("vmf_bench.csv");
  man.write((fs::path(opts.out_dir) / "manifest.txt").string());
  return kExitOk;
}

int run_eval(const EvalOpts& opts) {
  io::RunManifest man;
  try {
    man = io::RunManifest::read(opts.manifest_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  const fs::path run_dir = fs::path(opts.manifest_path).parent_path();
  const auto need = [&](const char* key) -> std::string {
    const auto* v = man.get(key);
    if (!v) throw std::runtime_error(std::string("manifest missing key: ") + key);
    return *v;
  };
  try {
    const std::string env_name = need("env");
    const int dim = std::stoi(need("dim"));
    const std::string policy_kind = need("policy");
    const double r_star = std::stod(need("shell_r_star"));
    const double radius = std::stod(need("radius"));
    const int episodes = opts.episodes > 0 ? opts.episodes : std::stoi(need("eval_episodes"));
    if (man.checkpoint_file.empty()) throw std::runtime_error("manifest lists no checkpoint");
    const std::string ckpt_path = (run_dir / man.checkpoint_file).string();

    const std::string actual_sha = io::git_blob_sha1_file(ckpt_path);
    if (!man.checkpoint_sha1.empty() && actual_sha != man.checkpoint_sha1) {
      std::cerr << "error: checkpoint hash mismatch (recorded " << man.checkpoint_sha1
                << ", actual " << actual_sha << ")\n";
      return kExitIo;
    }

    auto nets = netcore::load_networks(ckpt_path);
    auto env = envs::make_env(env_name, dim, r_star, derive_stream_seed(man.seed, "eval"));

    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> act;
    std::unique_ptr<netcore::GacPolicy> gac_policy;
    std::unique_ptr<netcore::GaussianPolicy> gauss_policy;
    if (policy_kind == "gac") {
      gac_policy = std::make_unique<netcore::GacPolicy>(
          std::move(nets.at("policy.backbone")), std::move(nets.at("policy.dir_head")),
          std::move(nets.at("policy.kappa_head")));
      act = [&, radius](const Eigen::VectorXd& s) {
        const auto fwd = gac_policy->forward(s);
        return Eigen::VectorXd(radius * fwd.mu.col(0));
      };
    } else if (policy_kind == "gaussian") {
      gauss_policy = std::make_unique<netcore::GaussianPolicy>(
          std::move(nets.at("policy.backbone")), std::move(nets.at("policy.head")));
      act = [&](const Eigen::VectorXd& s) {
        const auto fwd = gauss_policy->forward(s);
        return Eigen::VectorXd(gauss_policy->mean_action(fwd).col(0));
      };
    } else {
      throw std::runtime_error("manifest has unknown policy kind: " + policy_kind);
    }

    double metric = 0, step_reward = 0;
    const double ret = agent::deterministic_rollouts(*env, act, episodes, &metric, &step_reward);
    std::cout << "eval_return = " << io::format_double(ret) << "\n";
    std::cout << "eval_final_metric = " << io::format_double(metric) << "\n";
    std::cout << "eval_mean_step_reward = " << io::format_double(step_reward) << "\n";

    if (const auto* recorded = man.get("eval_return"); recorded && opts.episodes == 0) {
      if (*recorded != io::format_double(ret)) {
        std::cerr << "error: reproduced eval_return " << io::format_double(ret)
                  << " differs from recorded " << *recorded << "\n";
        return kExitIo;
      }
      std::cout << "recorded eval_return reproduced exactly\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace gac::harness
