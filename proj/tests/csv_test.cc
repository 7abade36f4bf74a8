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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "jump_mppi/csv.h"

namespace jump_mppi {
namespace {

namespace fs = std::filesystem;

class CsvTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("jump_mppi_csv_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string Slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

TEST_F(CsvTest, SummaryHeaderExact) {
  WriteSummaryCsv(Path("s.csv"), {});
  EXPECT_EQ(Slurp(Path("s.csv")),
            "task,variant,nu,sigma_j,samples_m,trials,success_rate,"
            "total_variance,mean_iter_ms,seed\n");
}

TEST_F(CsvTest, TrajectoryHeaderExact) {
  std::vector<std::string> header = TrajectoryHeader({"x", "theta"}, {"u"});
  std::vector<std::string> expected = {"trial", "step", "t", "x",
                                       "theta", "u", "jump_indicator"};
  EXPECT_EQ(header, expected);
}

TEST_F(CsvTest, EmptyTrajectoryIsHeaderOnly) {
  WriteTrajectoryCsv(Path("t.csv"), {}, {"x"}, {"u"});
  EXPECT_EQ(Slurp(Path("t.csv")), "trial,step,t,x,u,jump_indicator\n");
}

TEST_F(CsvTest, SummaryRoundTripIsExact) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  std::vector<SummaryRow> rows;
  for (int i = 0; i < 20; ++i) {
    SummaryRow r;
    r.task = "cartpole";
    r.variant = i % 2 ? "old" : "new";
    r.nu = dist(gen);
    r.sigma_j = std::ldexp(dist(gen), -40);
    r.samples_m = 1000;
    r.trials = 20;
    r.success_rate = 0.1 * (i % 10);
    r.total_variance = dist(gen) * 1e12;
    r.mean_iter_ms = i == 3 ? std::numeric_limits<double>::quiet_NaN() : dist(gen);
    r.seed = 0xFFFFFFFFFFFFFFFFull - i;
    rows.push_back(r);
  }
  WriteSummaryCsv(Path("s.csv"), rows);
  CsvTable table = ReadCsv(Path("s.csv"));
  ASSERT_EQ(table.rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(table.rows[i][table.Column("variant")], rows[i].variant);
    EXPECT_EQ(table.Real(i, "nu"), rows[i].nu);
    EXPECT_EQ(table.Real(i, "sigma_j"), rows[i].sigma_j);
    EXPECT_EQ(table.Real(i, "success_rate"), rows[i].success_rate);
    EXPECT_EQ(table.Real(i, "total_variance"), rows[i].total_variance);
    if (i == 3) {
      EXPECT_TRUE(std::isnan(table.Real(i, "mean_iter_ms")));
    } else {
      EXPECT_EQ(table.Real(i, "mean_iter_ms"), rows[i].mean_iter_ms);
    }
    EXPECT_EQ(table.rows[i][table.Column("seed")], std::to_string(rows[i].seed));
  }
  EXPECT_EQ(table.Column("missing"), -1);
}

TEST_F(CsvTest, ThreeStepTrialGivesThreeRows) {
  TrialRecord r;
  r.dt = 0.02;
  r.states = RowMatrix::Random(4, 2);
  r.controls = RowMatrix::Random(3, 1);
  r.plant_jumps = {0, 1, 0};
  WriteTrajectoryCsv(Path("t.csv"), {r, r}, {"x", "v"}, {"u"});
  CsvTable table = ReadCsv(Path("t.csv"));
  ASSERT_EQ(table.rows.size(), 6u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(table.Real(i, "trial"), 0.0);
    EXPECT_EQ(table.Real(i, "step"), static_cast<double>(i));
    EXPECT_EQ(table.Real(i, "x"), r.states(i, 0));
    EXPECT_EQ(table.Real(i, "u"), r.controls(i, 0));
    EXPECT_EQ(table.Real(i, "jump_indicator"), r.plant_jumps[i]);
    if (i > 0) EXPECT_GT(table.Real(i, "t"), table.Real(i - 1, "t"));
  }
  EXPECT_EQ(table.Real(3, "trial"), 1.0);
}

TEST_F(CsvTest, RowWidthIsChecked) {
  CsvWriter w(Path("w.csv"), {"a", "b"});
  EXPECT_THROW(w.Row({"1"}), std::logic_error);
}

TEST_F(CsvTest, UnwritablePathThrows) {
  EXPECT_THROW(CsvWriter((dir_ / "no" / "such" / "f.csv").string(), {"a"}),
               std::runtime_error);
}

TEST(FormatRealTest, SpecialValues) {
  EXPECT_EQ(FormatReal(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(FormatReal(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(FormatReal(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(FormatReal(0.5), "0.5");
  EXPECT_EQ(std::stod(FormatReal(0.1)), 0.1);
}

}  // namespace
}  // namespace jump_mppi
