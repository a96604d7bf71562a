// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gac/manifest.hpp"

#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gac/config.hpp"
#include "gac/csv.hpp"

namespace gac::io {

std::string iso8601_utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void RunManifest::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : config)
    if (k == key) {
      v = value;
      return;
    }
  config.emplace_back(key, value);
}

void RunManifest::set(const std::string& key, double value) { set(key, format_double(value)); }

void RunManifest::set(const std::string& key, long value) { set(key, std::to_string(value)); }

const std::string* RunManifest::get(const std::string& key) const {
  for (const auto& [k, v] : config)
    if (k == key) return &v;
  return nullptr;
}

void RunManifest::write(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("manifest: cannot open " + path + " for writing");
  os << "command = " << command_line << '\n';
  os << "seed = " << seed << '\n';
  os << "start_time = " << start_time << '\n';
  os << "end_time = " << end_time << '\n';
  os << "status = " << status << '\n';
  for (const auto& [k, v] : config) os << k << " = " << v << '\n';
  if (!checkpoint_file.empty()) {
    os << "checkpoint = " << checkpoint_file << '\n';
    os << "checkpoint_sha1 = " << checkpoint_sha1 << '\n';
  }
  for (const auto& f : outputs) os << "output = " << f << '\n';
  if (!os) throw std::runtime_error("manifest: write failed for " + path);
}

RunManifest RunManifest::read(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("manifest: cannot open " + path);
  RunManifest m;
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "command") m.command_line = value;
    else if (key == "seed") m.seed = std::stoull(value);
    else if (key == "start_time") m.start_time = value;
    else if (key == "end_time") m.end_time = value;
    else if (key == "status") m.status = value;
    else if (key == "checkpoint") m.checkpoint_file = value;
    else if (key == "checkpoint_sha1") m.checkpoint_sha1 = value;
    else if (key == "output") m.outputs.push_back(value);
    else m.config.emplace_back(key, value);
  }
  return m;
}

}  // namespace gac::io
