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

#ifndef JUMP_MPPI_CSV_H_
#define JUMP_MPPI_CSV_H_

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "jump_mppi/harness.h"

namespace jump_mppi {

// Formats a real with 17 significant digits so that reading it back gives
// the same double. Non-finite values print as nan, inf or -inf.
std::string FormatReal(double value);

// Line-oriented CSV writer. Throws std::runtime_error if the path cannot be
// opened or a write fails.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);

  void Row(const std::vector<std::string>& fields);
  void Flush();

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
};

struct SummaryRow {
  std::string task;
  std::string variant;
  double nu = 0.0;
  double sigma_j = 0.0;
  int samples_m = 0;
  int trials = 0;
  double success_rate = 0.0;
  double total_variance = 0.0;
  double mean_iter_ms = 0.0;  // NaN when timing is not recorded
  std::uint64_t seed = 0;
};

const std::vector<std::string>& SummaryHeader();
std::vector<std::string> TrajectoryHeader(
    const std::vector<std::string>& state_names,
    const std::vector<std::string>& control_names);

void WriteSummaryCsv(const std::string& path,
                     const std::vector<SummaryRow>& rows);

// One row per executed step: state before the step, the control applied and
// whether the plant jumped during it. Trials are numbered in input order.
void WriteTrajectoryCsv(const std::string& path,
                        const std::vector<TrialRecord>& records,
                        const std::vector<std::string>& state_names,
                        const std::vector<std::string>& control_names);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int Column(const std::string& name) const;  // -1 if absent
  double Real(std::size_t row, const std::string& column) const;
};

CsvTable ReadCsv(const std::string& path);

}  // namespace jump_mppi

#endif  // JUMP_MPPI_CSV_H_
