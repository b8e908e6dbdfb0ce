/*
 * Copyright (c) 2026, The dmig Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dmig/dataio.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args)
{
  args.insert(args.begin(), "dmig");
  std::ostringstream out;
  std::ostringstream err;
  const int code = dmig::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override
  {
    dir_ = fs::temp_directory_path() /
           (std::string("dmig_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  [[nodiscard]] std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { dmig::io::write_text(dir_ / name, text); }

  // Two independent fair binary attributes copied into z1, z2; optionally with
  // the latent columns swapped.
  void write_binary(const std::string& name, bool swapped) const
  {
    std::string text = "#format v1\nz1,z2,a_x:disc,a_y:disc\n";
    for (int r = 0; r < 400; ++r) {
      const int x = r % 2;
      const int y = (r / 2) % 2;
      const int z1 = swapped ? y : x;
      const int z2 = swapped ? x : y;
      text += std::to_string(z1) + "," + std::to_string(z2) + "," + std::to_string(x) + "," + std::to_string(y) + "\n";
    }
    write(name, text);
  }

  fs::path dir_;
};

// --- eval -------------------------------------------------------------------------

TEST_F(CliTest, EvalIdealBinaryShowsOne)
{
  write_binary("ideal.csv", false);
  const auto r = run({"eval", path("ideal.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("x                  1.000     1.000     1.000 z1    z2         regularized        0.693147 -\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("y                  1.000     1.000     1.000 z2    z1         regularized        0.693147 -\n"), std::string::npos) << r.out;
}

TEST_F(CliTest, EvalPermutedLatentsIsAFindingNotAnError)
{
  write_binary("swapped.csv", true);
  const auto r = run({"eval", path("swapped.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("regularization_failure"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("-1.000"), std::string::npos) << r.out;
}

TEST_F(CliTest, EvalMissingFileNamesPath)
{
  const auto r = run({"eval", path("nope.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(path("nope.csv")), std::string::npos) << r.err;
}

TEST_F(CliTest, EvalParseErrorIsExitTwo)
{
  write("bad.csv", "#format v1\nz1,a_x:cont\n0.1,0.2\n0.3,nan\n");
  const auto r = run({"eval", path("bad.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("row 2"), std::string::npos) << r.err;
}

TEST_F(CliTest, EvalWritesReportAndSeries)
{
  write_binary("a.csv", false);
  write_binary("b.csv", true);
  auto r = run({"eval", path("a.csv"), "--out", path("a.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = dmig::io::read_report(path("a.json"));
  EXPECT_EQ(report.per_attribute.size(), 2u);
  EXPECT_EQ(report.mean_mig, 1.0);

  r = run({"eval", path("a.csv"), path("b.csv"), "--series", path("s.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto series = dmig::io::read_series(path("s.json"));
  ASSERT_EQ(series.size(), 2u);
  EXPECT_EQ(series[1].epoch, 1u);
  EXPECT_TRUE(series[1].report.per_attribute[0].flags.has(dmig::Flag::regularization_failure));

  r = run({"eval", path("a.csv"), path("b.csv"), "--out", path("x.json")});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, EvalOutputIsGolden)
{
  write("tiny.csv",
        "#format v1\n"
        "#map a_p -> z2\n"
        "z1,z2,a_p:disc\n"
        "0,0,0\n0,1,1\n1,1,1\n1,0,0\n0,0,0\n1,1,1\n0,1,0\n1,0,1\n");
  const auto first = run({"eval", path("tiny.csv"), "--out", path("tiny.json")});
  ASSERT_EQ(first.code, 0) << first.err;
  // p agrees with z1 and z2 on six of eight rows each; the tie goes to z1.
  const std::string expected_table =
      "attribute            mig      dmig       scc top   runner-up  branch          denominator flags\n"
      "p                  0.000     0.000     0.500 z1    z1         unregularized      0.693147 regularization_failure\n"
      "mean               0.000     0.000 \n";
  EXPECT_NE(first.out.find(expected_table), std::string::npos) << first.out;
  const std::string report = dmig::io::read_text(path("tiny.json"));
  const auto second = run({"eval", path("tiny.csv"), "--out", path("tiny2.json")});
  EXPECT_EQ(dmig::io::read_text(path("tiny2.json")), report);
  EXPECT_EQ(second.out.substr(0, second.out.find("wrote")), first.out.substr(0, first.out.find("wrote")));
}

// --- synth ------------------------------------------------------------------------

TEST_F(CliTest, SynthGaussianPairWritesSidecar)
{
  const auto r = run({"synth", "--family", "gaussian_pair", "--rho", "0.8", "--n", "20000", "--out-dir", path("g")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("I(a1;a2) = 0.5108"), std::string::npos) << r.out;
  const auto truth = dmig::io::read_truth(path("g/gaussian_pair.csv.truth"));
  EXPECT_NEAR(truth.truth.i_a1a2, 0.5108, 1e-4);
  EXPECT_EQ(truth.n, 20000u);
  EXPECT_EQ(dmig::io::read_dataset(path("g/gaussian_pair.csv")).rows(), 20000u);
}

TEST_F(CliTest, SynthTrajectoryWritesOneFilePerEpoch)
{
  const auto r = run({"synth", "--family", "trajectory", "--epochs", "30", "--n", "200", "--out-dir", path("t")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::size_t csv = 0;
  std::size_t truth = 0;
  for (const auto& e : fs::directory_iterator(path("t"))) {
    if (e.path().extension() == ".csv") ++csv;
    if (e.path().extension() == ".truth") ++truth;
  }
  EXPECT_EQ(csv, 30u);
  EXPECT_EQ(truth, 30u);
  EXPECT_TRUE(fs::exists(path("t/epoch_000.csv")));
  EXPECT_TRUE(fs::exists(path("t/epoch_029.csv")));
}

TEST_F(CliTest, SynthRejectsInvalidSpecs)
{
  auto r = run({"synth", "--family", "gaussian_pair", "--rho", "1.0", "--out-dir", path("g")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("|rho| < 1"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(path("g/gaussian_pair.csv")));
  r = run({"synth", "--family", "spiral", "--out-dir", path("g")});
  EXPECT_EQ(r.code, 2);
  r = run({"synth", "--family", "discrete_joint", "--pmf", "0.5,0.6", "--out-dir", path("g")});
  EXPECT_EQ(r.code, 2);
}

// --- oracle ---------------------------------------------------------------------

TEST_F(CliTest, OracleGaussianPassesAtLargeN)
{
  ASSERT_EQ(run({"synth", "--family", "gaussian_pair", "--rho", "0.8", "--n", "20000", "--out-dir", path("g")}).code,
            0);
  const auto r = run({"oracle", path("g/gaussian_pair.csv"), "--tol", "0.03"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("all quantities within tolerance"), std::string::npos);
}

TEST_F(CliTest, OracleGaussianFailsAtSmallN)
{
  ASSERT_EQ(
      run({"synth", "--family", "gaussian_pair", "--rho", "0.8", "--n", "50", "--seed", "1", "--out-dir", path("g")})
          .code,
      0);
  const auto r = run({"oracle", path("g/gaussian_pair.csv"), "--tol", "0.03"});
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, OracleDiscretePassesAtTightTolerance)
{
  ASSERT_EQ(run({"synth", "--family", "discrete_joint", "--n", "100000", "--out-dir", path("d")}).code, 0);
  const auto r = run({"oracle", path("d/discrete_joint.csv"), "--tol", "0.005"});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST_F(CliTest, OracleWithoutSidecarIsAnError)
{
  write_binary("plain.csv", false);
  const auto r = run({"oracle", path("plain.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("plain.csv.truth"), std::string::npos) << r.err;
}

// --- plot -------------------------------------------------------------------------

TEST_F(CliTest, PlotFromEvalSeries)
{
  ASSERT_EQ(run({"synth", "--family", "trajectory", "--epochs", "4", "--n", "500", "--sigma-max", "2", "--sigma-min",
                 "0.2", "--out-dir", path("t")})
                .code,
            0);
  std::vector<std::string> args{"eval"};
  for (int e = 0; e < 4; ++e) args.push_back(path("t/epoch_00" + std::to_string(e) + ".csv"));
  args.insert(args.end(), {"--series", path("s.json")});
  ASSERT_EQ(run(args).code, 0);

  auto r = run({"plot", path("s.json"), "--x", "mig", "--y", "dmig", "--out", path("p.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string svg = dmig::io::read_text(path("p.svg"));
  EXPECT_NE(svg.find("class=\"reference\""), std::string::npos);

  r = run({"plot", path("s.json"), "--x", "mig", "--y", "scc", "--x-range", "0,0.15", "--out", path("q.svg")});
  EXPECT_EQ(r.code, 0) << r.err;
  r = run({"plot", path("s.json"), "--x", "mig", "--y", "scc", "--x-range", "0.15", "--out", path("q.svg")});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, PlotRejectsSameAxis)
{
  const auto r = run({"plot", path("s.json"), "--x", "scc", "--y", "scc", "--out", path("p.svg")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("must differ"), std::string::npos) << r.err;
}

// --- usage -----------------------------------------------------------------------

TEST(CliUsage, HelpListsFlags)
{
  const auto top = run({"--help"});
  EXPECT_EQ(top.code, 0);
  for (const char* sub : {"eval", "synth", "oracle", "plot"}) EXPECT_NE(top.out.find(sub), std::string::npos);
  const auto synth = run({"synth", "--help"});
  EXPECT_EQ(synth.code, 0);
  for (const char* flag : {"--family", "--rho", "--n", "--seed", "--epochs", "--out-dir", "--d-total", "--pmf"}) {
    EXPECT_NE(synth.out.find(flag), std::string::npos) << flag;
  }
  const auto eval = run({"eval", "--help"});
  for (const char* flag : {"--k", "--seed", "--jitter", "--out", "--series", "--threads"}) {
    EXPECT_NE(eval.out.find(flag), std::string::npos) << flag;
  }
}

TEST(CliUsage, UnknownFlagsAndMissingSubcommand)
{
  EXPECT_EQ(run({"eval", "x.csv", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"synth"}).code, 2);
  EXPECT_EQ(run({"eval", "x.csv", "--k", "three"}).code, 2);
}

}  // namespace
