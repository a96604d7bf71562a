// Copyright (c) 2026 The gaclab Authors.
// SPDX-License-Identifier: Apache-2.0

#include "gac/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace gac::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : path_(path), os_(path), n_columns_(columns.size()) {
  if (!os_) throw std::runtime_error("csv: cannot open " + path + " for writing");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) os_ << ',';
    os_ << columns[i];
  }
  os_ << '\n';
}

CsvWriter::RowBuilder& CsvWriter::RowBuilder::add(double v) {
  cells_.push_back(format_double(v));
  return *this;
}

CsvWriter::RowBuilder& CsvWriter::RowBuilder::add(long v) {
  cells_.push_back(std::to_string(v));
  return *this;
}

CsvWriter::RowBuilder& CsvWriter::RowBuilder::add(const std::string& v) {
  cells_.push_back(v);
  return *this;
}

CsvWriter::RowBuilder& CsvWriter::RowBuilder::add_empty() {
  cells_.emplace_back();
  return *this;
}

void CsvWriter::RowBuilder::done() { w_.write_row(cells_); }

void CsvWriter::write_row(const std::vector<std::string>& cells) {
  if (cells.size() != n_columns_)
    throw std::logic_error("csv: row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    os_ << cells[i];
  }
  os_ << '\n';
}

void CsvWriter::flush() { os_.flush(); }

}  // namespace gac::io
