// Runs the qprice executable end to end.
#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;  // stdout and stderr merged
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + QPRICE_CLI_PATH + "\" " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qprice_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("compare --bogus").code, 2);
  EXPECT_EQ(run("compare --format xml").code, 2);
}

TEST_F(Cli, SampleCatalogValidatesClean) {
  const auto csv = path("sample.csv");
  ASSERT_EQ(run("sample-catalog -o " + csv).code, 0);
  const auto r = run("validate --catalog " + csv);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("14 accepted, 0 rejected"), std::string::npos);
}

TEST_F(Cli, ValidateReportsRejections) {
  const auto csv = write("bad.csv",
                         "product_name,price_elasticity,base_price,base_demand,unit_cost\n"
                         "A,-1.0,100.0,10.0,0.0\n"
                         "B,0.4,100.0,10.0,0.0\n"
                         "C,-1.0,100.0,10.0,150.0\n");
  const auto r = run("validate --catalog " + csv);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("line 3: rejected NonNegativeElasticity"), std::string::npos);
  EXPECT_NE(r.out.find("line 4: rejected CostExceedsPrice"), std::string::npos);
}

TEST_F(Cli, MissingCatalogNamesThePath) {
  const auto r = run("optimize --catalog " + path("nope.csv"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("nope.csv"), std::string::npos);
}

TEST_F(Cli, BadHeaderIsUsageError) {
  const auto csv = write("hdr.csv", "name,price\nx,1\n");
  const auto r = run("optimize --catalog " + csv);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("line 1"), std::string::npos);
}

TEST_F(Cli, MalformedConfigNamesTheKey) {
  const auto cfg = write("cfg.json", R"({"episodes": 100, "alpah": 0.2})");
  const auto r = run("optimize --config " + cfg);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("alpah"), std::string::npos);
}

TEST_F(Cli, FlagsOverrideConfigFile) {
  const auto cfg = write("cfg.json", R"({"master_seed": 5, "grid_points": 11})");
  const auto r = run("optimize --format json --config " + cfg + " --grid-points 31");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"grid_points\": 31"), std::string::npos);
  EXPECT_NE(r.out.find("\"master_seed\": 5"), std::string::npos);
}

TEST_F(Cli, TrainWritesTableAndSidecar) {
  const auto out = path("q.csv");
  const auto r = run("train --product \"Samsung 24\\\" HD\" --episodes 200 -o " + out);
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(slurp(out).rfind("state,54.6,", 0), 0u);
  EXPECT_NE(slurp(out + ".json").find("\"episodes\": 200"), std::string::npos);
  EXPECT_EQ(run("train --product Nothing --episodes 10").code, 2);
}

TEST_F(Cli, CompareIsDeterministicAcrossJobs) {
  const auto a = run("compare --episodes 500 --seed 3 --jobs 1");
  const auto b = run("compare --episodes 500 --seed 3 --jobs 4");
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(run("compare --format json --seed 3").out, run("compare --format json --seed 4").out);
}

TEST_F(Cli, CurveExport) {
  const auto r = run("curve --samples 5");
  ASSERT_EQ(r.code, 0);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 1u + 14u * 2u * 5u);
}

TEST_F(Cli, SampleCatalogHasHeaderAndFourteenRows) {
  const auto r = run("sample-catalog");
  EXPECT_EQ(r.code, 0);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  EXPECT_EQ(lines, 15u);
}

TEST_F(Cli, PairedBoundsApplyInEitherOrder) {
  auto r = run("optimize --format json --grid-lo 0.1 --grid-hi 0.4 --epsilon 0.01 --epsilon-min 0.001");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("\"epsilon_start\": 0.01"), std::string::npos);
  r = run("optimize --format json --grid-lo 2.5 --grid-hi 3");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(run("optimize --grid-lo 3").code, 2);
}
