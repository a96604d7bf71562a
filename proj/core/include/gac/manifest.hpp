// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gac::io {

/// Plain-text "key = value" record of one experiment run: the command line,
/// the fully resolved configuration, the seed, timestamps, the checkpoint
/// content hash, and the list of output files. Written even on divergence.
struct RunManifest {
  std::string command_line;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> config;  // resolved, ordered
  std::string start_time;  // ISO-8601 UTC
  std::string end_time;
  std::string status;  // completed | diverged | n/a
  std::vector<std::string> outputs;      // file names relative to the run dir
  std::string checkpoint_file;           // empty when the run has none
  std::string checkpoint_sha1;           // git-style blob hash

  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long value);
  const std::string* get(const std::string& key) const;

  void write(const std::string& path) const;
  static RunManifest read(const std::string& path);
};

std::string iso8601_utc_now();

}  // namespace gac::io
