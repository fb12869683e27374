#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "thincascade/cli/run_command.hpp"
#include "thincascade/errors.hpp"

using namespace thincascade;
using namespace thincascade::cli;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("thincascade_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Config, MinimalConfigFillsDefaults) {
  const auto cfg = parse_config("[problem]\npreset = TP1\n");
  EXPECT_EQ(cfg.problem, "TP1");
  EXPECT_DOUBLE_EQ(cfg.alpha, 0.75);
  EXPECT_DOUBLE_EQ(cfg.L, 0.0);
  EXPECT_EQ(cfg.m, 1);
  EXPECT_EQ(cfg.geometry_preset, "widening");
  EXPECT_EQ(cfg.eps.size(), 5u);
}

TEST(Config, AlphaOutOfRangeCitesTheInterval) {
  try {
    parse_config("[problem]\nalpha = 0.5\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("(2/3, 1)"), std::string::npos);
  }
}

TEST(Config, UnknownKeyIsNamed) {
  try {
    parse_config("[study]\nepsilon = 0.1\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("epsilon"), std::string::npos);
  }
  EXPECT_THROW(parse_config("[solver]\ntol = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("m = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("[problem]\nm = two\n"), ConfigError);
}

TEST(Config, MissingProfileFileIsAFileError) {
  EXPECT_THROW(parse_config("[geometry]\nprofile = /nonexistent/joint.txt\n"), FileError);
  EXPECT_THROW(load_config("/nonexistent/run.ini"), FileError);
}

TEST(Config, ProfileFileAndInlineJointAreUsed) {
  const auto dir = fresh_dir("profile");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "joint.txt");
    out << "-0.5 0.5 0.5\n0 0.8 0.8\n0.5 0.5 0.5\n";
  }
  {
    std::ofstream out(dir / "run.ini");
    out << "[geometry]\nprofile = joint.txt\n";
  }
  const auto cfg = load_config(dir / "run.ini");
  EXPECT_NEAR(cfg.geometry().joint.area(), 1.3, 1e-12);
  const auto inline_cfg = parse_config("[geometry]\njoint = -0.5 0.5 0.5; 0 0.8 0.8; 0.5 0.5 0.5\n");
  EXPECT_NEAR(inline_cfg.geometry().joint.area(), 1.3, 1e-12);
}

TEST(Config, EchoRoundTrips) {
  const auto cfg = parse_config("[study]\neps = 0.2, 0.1\ncases = c1, c6\n[problem]\nm = 2\n");
  const auto echoed = echo_config(cfg);
  EXPECT_EQ(echo_config(parse_config(echoed)), echoed);
}

TEST(RunCommand, ZeroProblemStudyIsAllZeroAndExitsZero) {
  auto cfg = parse_config("[problem]\npreset = TP0\n[study]\neps = 0.2, 0.1, 0.05\nn_across = 4\ncommand = study\n");
  cfg.output = fresh_dir("tp0");
  std::ostringstream log;
  EXPECT_EQ(run_command(cfg, log), 0);
  std::istringstream csv(slurp(cfg.output / "report.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "case_id,eps,target_h,region,norm,error,self_error,slope,expected,pass");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cols.push_back(c);
    ASSERT_EQ(cols.size(), 10u) << line;
    EXPECT_EQ(std::stod(cols[5]), 0.0);
    EXPECT_EQ(cols[9], "PASS");
  }
  EXPECT_EQ(rows, 18);
  EXPECT_NE(slurp(cfg.output / "report.svg").find("<svg"), std::string::npos);
}

TEST(RunCommand, LimitOutputIsDeterministicAndParseable) {
  auto cfg = parse_config("[problem]\npreset = TP2\n[study]\ncommand = limit\n");
  cfg.output = fresh_dir("limit_a");
  std::ostringstream log;
  ASSERT_EQ(run_command(cfg, log), 0);
  const auto a = slurp(cfg.output / "limit.csv");
  cfg.output = fresh_dir("limit_b");
  ASSERT_EQ(run_command(cfg, log), 0);
  EXPECT_EQ(a, slurp(cfg.output / "limit.csv"));
  std::istringstream in(a);
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header, "branch,x,omega_2,domega_2,omega_3,domega_3,omega_4,domega_4");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
  }
  EXPECT_EQ(rows, 202);
}

TEST(RunCommand, InnerEmitsConstants) {
  auto cfg = parse_config("[problem]\npreset = TP2\n[study]\ncommand = inner\n");
  cfg.output = fresh_dir("inner");
  std::ostringstream log;
  ASSERT_EQ(run_command(cfg, log), 0);
  const auto consts = slurp(cfg.output / "inner_constants.csv");
  EXPECT_NE(consts.find("C0,0,"), std::string::npos);
  EXPECT_NE(consts.find("delta_plus,1,"), std::string::npos);
  EXPECT_TRUE(fs::exists(cfg.output / "inner_N0.csv"));
  EXPECT_TRUE(fs::exists(cfg.output / "inner_N1.csv"));
}

TEST(RunCommand, ReferenceAndCompositeExports) {
  auto cfg = parse_config("[problem]\npreset = TP1\n[study]\nn_across = 4\nsample_eps = 0.2\n");
  cfg.output = fresh_dir("exports");
  std::ostringstream log;
  cfg.command = "reference";
  ASSERT_EQ(run_command(cfg, log), 0);
  cfg.command = "composite";
  ASSERT_EQ(run_command(cfg, log), 0);
  EXPECT_EQ(slurp(cfg.output / "reference.csv").rfind("vertex_index,x,y,value\n", 0), 0u);
  EXPECT_EQ(slurp(cfg.output / "composite.csv").rfind("vertex_index,x,y,value,dx,dy\n", 0), 0u);
}

TEST(RunCommand, MissingDerivativesSurfaceAsCapabilityError) {
  auto cfg = parse_config("[problem]\npreset = TP2\nm = 2\nderivative_order = 1\n[study]\ncommand = limit\n");
  cfg.output = fresh_dir("capability");
  std::ostringstream log;
  try {
    run_command(cfg, log);
    FAIL() << "expected CapabilityError";
  } catch (const CapabilityError& e) {
    EXPECT_NE(std::string(e.what()).find("compute_d_star"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("stage pipeline"), std::string::npos);
  }
}
