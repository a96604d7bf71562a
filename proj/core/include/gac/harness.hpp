// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gac/agent.hpp"

namespace gac::harness {

// Stable exit-code contract for scripting.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDiverged = 3;

struct ConcentrationOpts {
  int dim = 3;
  long samples = 50000;
  std::vector<double> kappas = {-2.0, -1.0, 0.0, 0.5, 1.0, 2.0};
  std::uint64_t seed = 0;
  std::string out_dir;
};
int run_validate_concentration(const ConcentrationOpts& opts, const std::string& command_line);

struct TrainOpts {
  std::string env_name;  // point-mass | directional-shell
  int dim = 4;
  double shell_r_star = 1.0;
  std::string policy = "gac";  // gac | gaussian
  agent::TrainConfig config;
  bool dump_trajectories = false;
  std::string out_dir;
};

struct TrainOutcome {
  int exit_code = kExitOk;
  agent::TrainReport report;
};

TrainOutcome run_train(const TrainOpts& opts, const std::string& command_line);

struct AblateOpts {
  std::string config_path;
  std::string out_dir;
  int jobs = 1;
};
int run_ablate(const AblateOpts& opts, const std::string& command_line);

struct SaturationOpts {
  double mean = 0.0;
  double std_dev = 1.0;
  double threshold = 0.05;
  long samples = 1000000;
  std::uint64_t seed = 0;
  std::string log_path;  // when set, probe a recorded pre-squash log instead
  std::string out_dir;
};
int run_saturation(const SaturationOpts& opts, const std::string& command_line);

struct BenchOpts {
  int dim = 17;
  std::vector<double> kappas = {0.0, 1.0, 5.0, 10.0};
  long samples = 200000;
  std::uint64_t seed = 0;
  std::string out_dir;
};
int run_bench_sampling(const BenchOpts& opts, const std::string& command_line);

struct EvalOpts {
  std::string manifest_path;
  int episodes = 0;  // 0: take the episode count from the manifest
};
int run_eval(const EvalOpts& opts);

}  // namespace gac::harness
