// Copyright 2026 The Jump-MPPI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "jump_mppi/csv.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace jump_mppi {

std::string FormatReal(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header)
    : path_(path), out_(path, std::ios::out | std::ios::trunc),
      columns_(header.size()) {
  if (!out_) throw std::runtime_error("cannot write '" + path + "'");
  Row(header);
}

void CsvWriter::Row(const std::vector<std::string>& fields) {
  if (fields.size() != columns_) {
    throw std::logic_error("csv row width does not match header");
  }
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
  if (!out_) throw std::runtime_error("write failed for '" + path_ + "'");
}

void CsvWriter::Flush() {
  out_.flush();
  if (!out_) throw std::runtime_error("write failed for '" + path_ + "'");
}

const std::vector<std::string>& SummaryHeader() {
  static const std::vector<std::string> header = {
      "task",   "variant",      "nu",             "sigma_j",      "samples_m",
      "trials", "success_rate", "total_variance", "mean_iter_ms", "seed"};
  return header;
}

std::vector<std::string> TrajectoryHeader(
    const std::vector<std::string>& state_names,
    const std::vector<std::string>& control_names) {
  std::vector<std::string> header = {"trial", "step", "t"};
  header.insert(header.end(), state_names.begin(), state_names.end());
  header.insert(header.end(), control_names.begin(), control_names.end());
  header.push_back("jump_indicator");
  return header;
}

void WriteSummaryCsv(const std::string& path,
                     const std::vector<SummaryRow>& rows) {
  CsvWriter writer(path, SummaryHeader());
  for (const SummaryRow& r : rows) {
    writer.Row({r.task, r.variant, FormatReal(r.nu), FormatReal(r.sigma_j),
                std::to_string(r.samples_m), std::to_string(r.trials),
                FormatReal(r.success_rate), FormatReal(r.total_variance),
                FormatReal(r.mean_iter_ms), std::to_string(r.seed)});
  }
  writer.Flush();
}

void WriteTrajectoryCsv(const std::string& path,
                        const std::vector<TrialRecord>& records,
                        const std::vector<std::string>& state_names,
                        const std::vector<std::string>& control_names) {
  CsvWriter writer(path, TrajectoryHeader(state_names, control_names));
  std::vector<std::string> fields;
  for (std::size_t trial = 0; trial < records.size(); ++trial) {
    const TrialRecord& rec = records[trial];
    if (rec.states.cols() != static_cast<int>(state_names.size()) ||
        rec.controls.cols() != static_cast<int>(control_names.size())) {
      throw std::invalid_argument("trajectory columns do not match names");
    }
    for (int k = 0; k < rec.steps(); ++k) {
      fields.clear();
      fields.push_back(std::to_string(trial));
      fields.push_back(std::to_string(k));
      fields.push_back(FormatReal(k * rec.dt));
      for (int i = 0; i < rec.states.cols(); ++i) {
        fields.push_back(FormatReal(rec.states(k, i)));
      }
      for (int i = 0; i < rec.controls.cols(); ++i) {
        fields.push_back(FormatReal(rec.controls(k, i)));
      }
      fields.push_back(std::to_string(static_cast<int>(rec.plant_jumps[k])));
      writer.Row(fields);
    }
  }
  writer.Flush();
}

int CsvTable::Column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

double CsvTable::Real(std::size_t row, const std::string& column) const {
  int col = Column(column);
  if (col < 0) throw std::out_of_range("no column '" + column + "'");
  const std::string& text = rows.at(row).at(col);
  char* end = nullptr;
  double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return value;
}

CsvTable ReadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (first) {
      table.header = std::move(fields);
      first = false;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

}  // namespace jump_mppi
