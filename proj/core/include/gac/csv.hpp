// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace gac::io {

/// Byte-deterministic CSV writer: doubles are printed with %.17g so that
/// identical values always produce identical rows. No timestamps.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns);

  class RowBuilder {
   public:
    explicit RowBuilder(CsvWriter& w) : w_(w) {}
    RowBuilder& add(double v);
    RowBuilder& add(long v);
    RowBuilder& add(int v) { return add(static_cast<long>(v)); }
    RowBuilder& add(const std::string& v);
    RowBuilder& add_empty();
    void done();

   private:
    CsvWriter& w_;
    std::vector<std::string> cells_;
  };

  RowBuilder row() { return RowBuilder(*this); }
  void flush();
  const std::string& path() const { return path_; }

 private:
  friend class RowBuilder;
  void write_row(const std::vector<std::string>& cells);
  std::string path_;
  std::ofstream os_;
  std::size_t n_columns_;
};

std::string format_double(double v);

}  // namespace gac::io
