// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

namespace gac::io {

/// Flat "key = value" text with optional [section] headers. Keys before the
/// first header land in the section named "" (the base section). Lines that
/// are blank or start with '#' are skipped.
struct ConfigFile {
  struct Section {
    std::string name;
    std::map<std::string, std::string> values;
  };
  std::vector<Section> sections;

  const Section* find(const std::string& name) const;
};

ConfigFile parse_config(const std::string& text);
ConfigFile parse_config_file(const std::string& path);

/// Parses "a,b,c" into doubles; throws on malformed entries.
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace gac::io
