// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gac/config.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gac::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

const ConfigFile::Section* ConfigFile::find(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

ConfigFile parse_config(const std::string& text) {
  ConfigFile cfg;
  cfg.sections.push_back({"", {}});
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw std::runtime_error("config line " + std::to_string(lineno) +
                                 ": unterminated section header");
      cfg.sections.push_back({trim(t.substr(1, t.size() - 2)), {}});
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
    cfg.sections.back().values[key] = value;
  }
  return cfg;
}

ConfigFile parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    const std::string t = trim(tok);
    if (t.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::runtime_error("malformed number: " + t);
    out.push_back(v);
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    const std::string t = trim(tok);
    if (t.empty()) continue;
    out.push_back(std::stoull(t));
  }
  return out;
}

}  // namespace gac::io
