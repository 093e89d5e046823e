#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "config.hpp"
#include "dataset.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "lgof");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = lgof::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path write_temp(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("lgof_test_" + name);
  std::ofstream(p) << content;
  return p;
}

const std::string kBladder = std::string(LGOF_DATA_DIR) + "/bladder_cancer.txt";

TEST(CliFit, BladderMoments) {
  const auto r = run({"fit", kBladder, "--log", "--method=moments"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("mu      1.75"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("sigma   0.5916"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("n       128"), std::string::npos);
}

TEST(CliFit, TwoPoints) {
  const auto p = write_temp("two.txt", "-1\n1\n");
  const auto r = run({"fit", p.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("mu      0\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("sigma   0.551329"), std::string::npos) << r.out;
}

TEST(CliFit, NonPositiveUnderLogNamesLine) {
  const auto p = write_temp("nonpos.txt", "# header\n1.5\n\n-2\n");
  const auto r = run({"fit", p.string(), "--log"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":4:"), std::string::npos) << r.err;
}

TEST(CliFit, MalformedAndMissing) {
  const auto p = write_temp("bad.txt", "1.0\n2,5\n");
  auto r = run({"fit", p.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":2:"), std::string::npos) << r.err;
  r = run({"fit", "/nonexistent/file.txt"});
  EXPECT_EQ(r.code, 2);
  r = run({"fit", write_temp("empty.txt", "# nothing\n\n").string()});
  EXPECT_EQ(r.code, 2);
}

TEST(CliFit, DegenerateData) {
  EXPECT_EQ(run({"fit", write_temp("const.txt", "3\n3\n3\n").string()}).code, 3);
  EXPECT_EQ(run({"fit", write_temp("single.txt", "3\n").string()}).code, 3);
}

TEST(CliTest, UnknownStatisticListsValidNames) {
  const auto r = run({"test", kBladder, "--stat=G"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("KS"), std::string::npos) << r.err;
}

TEST(CliTest, DeterministicOutput) {
  const std::vector<std::string> args{"test", kBladder, "--log", "--stat=T,AD", "--a=3", "--reps=300", "--seed=5"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("T3"), std::string::npos);
  EXPECT_NE(a.out.find("0.449956"), std::string::npos) << a.out;
}

TEST(CliTest, PlotData) {
  const auto r = run({"test", kBladder, "--log", "--plot-data=-"});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,logistic_quantile,residual");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 128);
}

TEST(CliCalibrate, PrintsCsvWithoutOut) {
  const auto r = run({"calibrate", "--stat=T", "--a=3,4", "--n=10", "--alpha-list=0.5", "--reps=200"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("statistic,tuning,n,alpha,value,mc_std_error,excluded_reps\n", 0), 0u);
  EXPECT_NE(r.out.find("T,3,10,0.5,"), std::string::npos);
  EXPECT_NE(r.out.find("T,4,10,0.5,"), std::string::npos);
}

TEST(CliCalibrate, WritesFile) {
  const fs::path out = fs::temp_directory_path() / "lgof_test_cal.csv";
  fs::remove(out);
  const auto r = run({"calibrate", "--stat=KS", "--n=10", "--reps=100", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(fs::exists(out));
}

TEST(CliPower, SmokeConfig) {
  const auto r = run({"power", "--config", std::string(LGOF_CONFIG_DIR) + "/smoke.cfg"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    // percent column lies in [0, 100]
    std::vector<std::string> f;
    std::string cell;
    bool quoted = false;
    for (const char c : line) {
      if (c == '"') quoted = !quoted;
      else if (c == ',' && !quoted) f.push_back(std::exchange(cell, {}));
      else cell += c;
    }
    f.push_back(cell);
    ASSERT_EQ(f.size(), 10u) << line;
    const int pct = std::stoi(f[7]);
    EXPECT_GE(pct, 0);
    EXPECT_LE(pct, 100);
  }
  EXPECT_EQ(rows, 20);
}

TEST(CliPower, MalformedConfig) {
  const auto p = write_temp("bad.cfg", "statistics = T3\nn = 20\nalternative = Weibull(2)\n");
  auto r = run({"power", "--config", p.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":3: alternative"), std::string::npos) << r.err;
  r = run({"power", "--config", write_temp("bad2.cfg", "statistics = T3\nn 20\n").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":2:"), std::string::npos) << r.err;
  r = run({"power", "--config", write_temp("bad3.cfg", "statistics = T3\nn = 20\nfoo = 1\n").string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("foo"), std::string::npos) << r.err;
}

TEST(CliUsage, MissingSubcommand) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Dataset, LocaleIndependentParsing) {
  std::istringstream in("  1.5e0 # trailing comment\n+2.25\n\n-0.75\n");
  const auto d = lgof::cli::read_dataset(in, "mem", lgof::cli::Transform::None);
  EXPECT_EQ(d.values, (std::vector<double>{1.5, 2.25, -0.75}));
}

TEST(Config, ParsesShippedTables) {
  for (const char* name : {"power_n20.cfg", "power_n50.cfg", "local_cauchy.cfg", "local_lognormal.cfg", "smoke.cfg"}) {
    const auto cfg = lgof::cli::read_power_config(std::string(LGOF_CONFIG_DIR) + "/" + name);
    EXPECT_FALSE(cfg.statistics.empty()) << name;
  }
  const auto t4 = lgof::cli::read_power_config(std::string(LGOF_CONFIG_DIR) + "/local_cauchy.cfg");
  ASSERT_TRUE(t4.contaminant.has_value());
  EXPECT_EQ(t4.mixing_p.size(), 13u);
  EXPECT_EQ(t4.sizes, (std::vector<std::size_t>{20, 50}));
}

}  // namespace
