// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
//
// gac: command-line front end for the geometric-action-control lab.
// Exit codes: 0 completed, 1 I/O error, 2 usage error, 3 training diverged.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "gac/config.hpp"
#include "gac/harness.hpp"

namespace {

std::string join_argv(int argc, char** argv) {
  std::ostringstream os;
  for (int i = 0; i < argc; ++i) {
    if (i) os << ' ';
    os << argv[i];
  }
  return os.str();
}

std::string default_out_dir() {
  if (const char* env = std::getenv("GAC_OUT_DIR"); env && *env) return env;
  return "out";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace gac;
  const std::string command_line = join_argv(argc, argv);

  CLI::App app{"Geometric action control lab: spherical-mixing policies, a SAC-style\n"
               "trainer with a tanh-Gaussian baseline, desk-scale control tasks, and a\n"
               "verification suite for the geometric and statistical claims."};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  // --- validate-concentration ---
  harness::ConcentrationOpts conc;
  conc.out_dir = default_out_dir();
  std::string conc_kappas = "-2,-1,0,0.5,1,2";
  auto* c_val = app.add_subcommand("validate-concentration",
                                   "Measure concentration statistics per kappa and write "
                                   "concentration.csv");
  c_val->add_option("--dim", conc.dim, "Sphere dimension d")->capture_default_str();
  c_val->add_option("--samples", conc.samples, "Mixtures per kappa")->capture_default_str();
  c_val->add_option("--kappas", conc_kappas, "Comma-separated kappa list")
      ->capture_default_str();
  c_val->add_option("--seed", conc.seed, "Root seed")->capture_default_str();
  c_val->add_option("--out", conc.out_dir, "Output directory")->capture_default_str();

  // --- train ---
  harness::TrainOpts train;
  train.out_dir = default_out_dir();
  auto* c_train = app.add_subcommand("train", "Train a policy and write train.csv, "
                                              "episodes.csv, checkpoint and manifest");
  c_train->add_option("--env", train.env_name, "Environment: point-mass | directional-shell")
      ->required();
  c_train->add_option("--dim", train.dim, "Action dimension")->capture_default_str();
  c_train->add_option("--policy", train.policy, "Policy head: gac | gaussian")
      ->check(CLI::IsMember({"gac", "gaussian"}))
      ->capture_default_str();
  c_train->add_option("--steps", train.config.steps, "Environment steps")
      ->capture_default_str();
  c_train->add_option("--radius", train.config.radius, "Action radius r")
      ->capture_default_str();
  c_train->add_option("--shell-radius", train.shell_r_star,
                      "Target shell radius r_star (directional-shell only)")
      ->capture_default_str();
  c_train->add_option("--seed", train.config.seed, "Root seed")->capture_default_str();
  c_train->add_option("--warmup", train.config.warmup, "Uniform-action warmup steps")
      ->capture_default_str();
  c_train->add_option("--batch", train.config.batch, "Batch size")->capture_default_str();
  c_train->add_option("--gamma", train.config.gamma, "Discount factor")
      ->capture_default_str();
  c_train->add_option("--tau", train.config.tau, "Polyak rate")->capture_default_str();
  c_train->add_option("--actor-lr", train.config.actor_lr, "Actor learning rate")
      ->capture_default_str();
  c_train->add_option("--critic-lr", train.config.critic_lr, "Critic learning rate")
      ->capture_default_str();
  c_train->add_option("--alpha", train.config.alpha,
                      "Entropy temperature (gaussian baseline)")
      ->capture_default_str();
  c_train->add_option("--buffer", train.config.buffer_capacity, "Replay capacity")
      ->capture_default_str();
  c_train->add_option("--eval-episodes", train.config.eval_episodes,
                      "Deterministic evaluation episodes after training")
      ->capture_default_str();
  c_train->add_option("--log-window", train.config.log_window, "Steps per train.csv row")
      ->capture_default_str();
  c_train->add_flag("--no-kappa", train.config.no_kappa,
                    "Ablation: fix w = sigmoid(1), drop the -kappa terms");
  c_train->add_flag("--no-normalize", train.config.no_normalize,
                    "Ablation: skip the outer normalization (action = r*v)");
  c_train->add_flag("--dump-trajectories", train.dump_trajectories,
                    "Write deterministic evaluation trajectories.csv");
  c_train->add_option("--out", train.out_dir, "Output directory")->capture_default_str();

  // --- ablate ---
  harness::AblateOpts ablate;
  ablate.out_dir = default_out_dir();
  auto* c_ablate = app.add_subcommand("ablate",
                                      "Run the variant x seed grid from a config file and "
                                      "write ablation.csv");
  c_ablate->add_option("--config", ablate.config_path, "Ablation config file")->required();
  c_ablate->add_option("--jobs", ablate.jobs, "Parallel runs")->capture_default_str();
  c_ablate->add_option("--out", ablate.out_dir, "Output directory")->capture_default_str();

  // --- saturation ---
  harness::SaturationOpts sat;
  sat.out_dir = default_out_dir();
  auto* c_sat = app.add_subcommand("saturation",
                                   "Tanh gradient-saturation probe (synthetic Gaussian or "
                                   "recorded pre-squash log)");
  c_sat->add_option("--mean", sat.mean, "Gaussian mean")->capture_default_str();
  c_sat->add_option("--std", sat.std_dev, "Gaussian std")->capture_default_str();
  c_sat->add_option("--threshold", sat.threshold, "Gradient threshold")
      ->capture_default_str();
  c_sat->add_option("--samples", sat.samples, "Monte-Carlo draws")->capture_default_str();
  c_sat->add_option("--seed", sat.seed, "Root seed")->capture_default_str();
  c_sat->add_option("--log", sat.log_path, "presquash.csv from a gaussian training run");
  c_sat->add_option("--out", sat.out_dir, "Output directory")->capture_default_str();

  // --- bench-sampling ---
  harness::BenchOpts bench;
  bench.out_dir = default_out_dir();
  std::string bench_kappas = "0,1,5,10";
  auto* c_bench = app.add_subcommand("bench-sampling",
                                     "Time GAC mixing against the vMF rejection sampler and "
                                     "write vmf_bench.csv");
  c_bench->add_option("--dim", bench.dim, "Dimension d")->capture_default_str();
  c_bench->add_option("--kappas", bench_kappas, "Comma-separated kappa list")
      ->capture_default_str();
  c_bench->add_option("--samples", bench.samples, "Samples per timing repetition")
      ->capture_default_str();
  c_bench->add_option("--seed", bench.seed, "Root seed")->capture_default_str();
  c_bench->add_option("--out", bench.out_dir, "Output directory")->capture_default_str();

  // --- eval ---
  harness::EvalOpts eval;
  auto* c_eval = app.add_subcommand("eval",
                                    "Replay the deterministic evaluation recorded in a run "
                                    "manifest from its checkpoint");
  c_eval->add_option("--manifest", eval.manifest_path, "manifest.txt of a training run")
      ->required();
  c_eval->add_option("--episodes", eval.episodes,
                     "Override the episode count (skips the exact-match check)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return gac::harness::kExitUsage;
  }

  try {
    if (*c_val) {
      conc.kappas = io::parse_double_list(conc_kappas);
      return harness::run_validate_concentration(conc, command_line);
    }
    if (*c_train) {
      const harness::TrainOutcome oc = harness::run_train(train, command_line);
      return oc.exit_code;
    }
    if (*c_ablate) return harness::run_ablate(ablate, command_line);
    if (*c_sat) return harness::run_saturation(sat, command_line);
    if (*c_bench) {
      bench.kappas = io::parse_double_list(bench_kappas);
      return harness::run_bench_sampling(bench, command_line);
    }
    if (*c_eval) return harness::run_eval(eval);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return harness::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return harness::kExitIo;
  }
  return harness::kExitUsage;
}
