#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "vfp/io.hpp"
#include "vfp/rkc.hpp"
#include "vfp/scenario.hpp"

using namespace vfp;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vfp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome vfp(const std::string& args) const {
    const fs::path o = dir_ / "stdout.txt", e = dir_ / "stderr.txt";
    const std::string cmd = std::string("\"") + VFP_CLI_PATH + "\" " + args + " >\"" + o.string() + "\" 2>\"" +
                            e.string() + "\"";
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
  }

  std::string at(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, UnknownScenarioExitsWithKind) {
  const Outcome r = vfp("run --scenario warp-drive --out " + at("x"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("UnknownScenario"), std::string::npos) << r.err;
}

TEST_F(Cli, BadSettingsReportParseAndConfigErrors) {
  Outcome r = vfp("run --scenario hom-relax --set colour=blue --out " + at("x"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ParseError"), std::string::npos);
  r = vfp("run --scenario hom-relax --order 3 --out " + at("x"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("InvalidConfig"), std::string::npos);
  r = vfp("run --config " + at("missing.cfg") + " --out " + at("x"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("IoFailure"), std::string::npos);
  EXPECT_NE(vfp("").code, 0);
}

TEST_F(Cli, HomogeneousRunWritesOutputs) {
  const Outcome r = vfp("run --scenario hom-relax --nv 64 --t-end 5 --strict --out " + at("run"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("scenario=hom-relax"), std::string::npos);
  EXPECT_NE(r.out.find("-> ok"), std::string::npos);
  const DiagSeries s = read_series(dir_ / "run/series.csv");
  ASSERT_GE(s.rows.size(), 2u);
  EXPECT_NEAR(s.rows.back().t, 5.0, 1e-12);
  EXPECT_EQ(slurp(dir_ / "run/steps.csv").substr(0, 37), "t,dt,stages,err,accepted,rhs_evals,wa");
  const Snapshot snap = read_snapshot(dir_ / "run/final.snap");
  EXPECT_NEAR(snap.f.time, 5.0, 1e-12);
  EXPECT_FALSE(snap.e.has_value());
  const Scenario back = load_scenario(dir_ / "run/scenario.cfg");
  EXPECT_EQ(back.nv, 64);
  EXPECT_EQ(back.t_end, 5.0);
  EXPECT_NE(slurp(dir_ / "run/plotspec.txt").find("series series.csv"), std::string::npos);
}

TEST_F(Cli, SpatialRunAndRestart) {
  const std::string base = "run --scenario landau-1d --nx 16 --nv 64 --t-end 1 ";
  ASSERT_EQ(vfp(base + "--out " + at("a")).code, 0);
  const Snapshot first = read_snapshot(dir_ / "a/final.snap");
  ASSERT_TRUE(first.e.has_value());
  const Outcome r = vfp("run --scenario landau-1d --nx 16 --nv 64 --t-end 2 --restart " + at("a/final.snap") +
                        " --out " + at("b"));
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(read_snapshot(dir_ / "b/final.snap").f.time, 2.0, 1e-12);
  EXPECT_EQ(vfp("run --scenario landau-1d --nx 32 --nv 64 --t-end 2 --restart " + at("a/final.snap") + " --out " +
                at("c"))
                .code,
            2);
}

TEST_F(Cli, StrictFlagsViolations) {
  const Outcome r = vfp("run --scenario hom-relax --nv 64 --t-end 2 --strict --strict-tol 0 --out " + at("s"));
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("violated"), std::string::npos);
}

TEST_F(Cli, StabilityScan) {
  const Outcome r = vfp("stability --method rkc2 -s 10 --nre 20 --nim 5 --out " + at("st"));
  ASSERT_EQ(r.code, 0) << r.err;
  const double beta = rkc2_coeffs(10).stability_length;
  EXPECT_NE(r.out.find("s=10"), std::string::npos);
  std::ifstream trace(at("st_trace.csv"));
  std::string line;
  std::getline(trace, line);
  EXPECT_EQ(line, "z,R");
  int inside = 0;
  while (std::getline(trace, line)) {
    const auto comma = line.find(',');
    const double z = std::stod(line.substr(0, comma)), R = std::stod(line.substr(comma + 1));
    if (z >= -beta && z <= 0) {
      EXPECT_LE(std::abs(R), 1.0 + 1e-8) << z;
      ++inside;
    }
  }
  EXPECT_GT(inside, 3000);
  std::ifstream scan(at("st_scan.csv"));
  int rows = 0;
  while (std::getline(scan, line)) ++rows;
  EXPECT_EQ(rows, 1 + 20 * 5);
}

TEST_F(Cli, StabilityRejectsBadStageCount) {
  const Outcome r = vfp("stability --method rkc1 -s 1 --out " + at("st"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("BadStageCount"), std::string::npos);
  EXPECT_EQ(vfp("stability --method rk2 --out " + at("st")).code, 2);
}

TEST_F(Cli, EigenexportColumnSums) {
  const Outcome r = vfp("eigenexport --nv 64 --vmax 8 --nu 0.5 --T 1.2 --out " + at("m.txt"));
  ASSERT_EQ(r.code, 0) << r.err;
  int nv = 0;
  const DenseMatrix a = read_matrix(dir_ / "m.txt", &nv);
  EXPECT_EQ(nv, 64);
  ASSERT_EQ(a.rows, 65u);
  double amax = 0;
  for (double x : a.data) amax = std::max(amax, std::abs(x));
  for (std::size_t j = 0; j < a.cols; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < a.rows; ++i) s += a(i, j);
    EXPECT_LE(std::abs(s), 1e-12 * amax);
  }
  EXPECT_NE(r.out.find("imag_bound="), std::string::npos);
}

TEST_F(Cli, CoefficientTable) {
  const Outcome r = vfp("coeffs --method rkc2 -s 5");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("stability_length " + format_real(rkc2_coeffs(5).stability_length)), std::string::npos);
  EXPECT_NE(r.out.find("l,mu,nu,kappa,a,b,c\n0,"), std::string::npos);
  EXPECT_NE(r.out.find("\n5,"), std::string::npos);
}
