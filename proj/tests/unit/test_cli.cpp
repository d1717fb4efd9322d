#include <gtest/gtest.h>

#include <unistd.h>

#include <filesystem>
#include <sstream>

#include "../oracle/rawcsv.hpp"
#include "wrangle/cli.hpp"
#include "wrangle/generator.hpp"

namespace fs = std::filesystem;
using namespace wrangle;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = wrangle::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("wrangle_unit_" + std::to_string(::getpid()) + "_" +
           ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }
  std::string put(const std::string& name, const std::string& text) const {
    wrangle::cli::write_file(dir / name, text);
    return path(name);
  }

  fs::path dir;
};

std::string wf(const std::string& name) { return std::string(WRANGLE_SOURCE_DIR) + "/workflows/" + name; }

}  // namespace

TEST_F(CliTest, RunDwr1WritesJourneyTime) {
  ASSERT_EQ(invoke({"gen", "--seed", "3", "--sites", "2", "--rows", "300", "--out", path("data")}).code, 0);
  Outcome r = invoke({"run", wf("dwr1.json"), "--input", "ds1_1=" + path("data/site_1.csv"), "--input",
               "ds1_2=" + path("data/site_2.csv"), "--input", "ds1_3=" + path("data/sites.csv"), "--out",
               path("o")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto lines = oracle::lines_of(oracle::slurp(path("o/journey_time_s.csv")));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0], "journey_time_s");
  EXPECT_GT(std::stod(lines[1]), 0.0);
}

TEST_F(CliTest, MissingInputIsUsageError) {
  ASSERT_EQ(invoke({"gen", "--seed", "3", "--rows", "20", "--out", path("data")}).code, 0);
  Outcome r = invoke({"run", wf("dwr1.json"), "--input", "ds1_1=" + path("data/site_1.csv"), "--out", path("o")});
  EXPECT_EQ(r.code, wrangle::cli::kExitUsage);
  EXPECT_NE(r.err.find("ds1_2"), std::string::npos) << r.err;
}

TEST_F(CliTest, CorruptCsvCitesFileAndLine) {
  std::string bad = put("bad.csv", "Site ID,Date\n'1,2018-02-02 17:00:00\n\"oops\"x,2\n");
  std::string ok = put("ok.csv", "Site ID,Date\n");
  std::string sites = put("sites.csv", "Site.ID,LinkLength\n1,500\n");
  Outcome r = invoke({"run", wf("dwr1.json"), "--input", "ds1_1=" + bad, "--input", "ds1_2=" + ok, "--input",
               "ds1_3=" + sites, "--out", path("o")});
  EXPECT_EQ(r.code, wrangle::cli::kExitData);
  EXPECT_NE(r.err.find("bad.csv"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(CliTest, UnknownOpListsCatalogue) {
  Outcome r = invoke({"op", "traffic.nope", "--table", put("t.csv", "a\n1\n")});
  EXPECT_EQ(r.code, wrangle::cli::kExitUsage);
  EXPECT_NE(r.err.find("traffic.clean_site_id"), std::string::npos) << r.err;
}

TEST_F(CliTest, OpCleanSiteId) {
  std::string t = put("t.csv", "\"Site ID\",Speed\n'000000001083,31.691\n'000,1.0\n");
  Outcome r = invoke({"op", "traffic.clean_site_id", "--table", t, "--params", R"({"col":"Site ID"})"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "Site ID,Speed\n1083,31.691\n0,1.0\n");
}

TEST_F(CliTest, OpWeatherFlatten) {
  Outcome r = invoke({"op", "weather.flatten", "--table", std::string(WRANGLE_SOURCE_DIR) + "/tests/data/baltasound_obs.json",
               "--out", path("f.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto lines = oracle::lines_of(oracle::slurp(path("f.csv")));
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(oracle::split_fields(lines[0]).size(), 18u);
  EXPECT_EQ(oracle::split_fields(lines[1])[1], "BALTASOUND");
}

TEST_F(CliTest, GenIsDeterministicAndSized) {
  ASSERT_EQ(invoke({"gen", "--seed", "42", "--sites", "2", "--rows", "100", "--out", path("a")}).code, 0);
  ASSERT_EQ(invoke({"gen", "--seed", "42", "--sites", "2", "--rows", "100", "--out", path("b")}).code, 0);
  for (const char* f : {"site_1.csv", "site_2.csv", "sites.csv", "weather.json"}) {
    EXPECT_EQ(oracle::slurp(path(std::string("a/") + f)), oracle::slurp(path(std::string("b/") + f))) << f;
  }
  for (const char* f : {"site_1.csv", "site_2.csv"}) {
    auto lines = oracle::lines_of(oracle::slurp(path(std::string("a/") + f)));
    EXPECT_EQ(lines.size(), 101u) << f;
  }
  EXPECT_FALSE(fs::exists(path("a/site_3.csv")));
  EXPECT_EQ(invoke({"gen", "--sites", "0", "--out", path("c")}).code, wrangle::cli::kExitUsage);
}

TEST(Generator, HeaderMatchesExportLayout) {
  gen::GenConfig cfg;
  cfg.rows_per_site = 5;
  auto files = gen::generate(cfg);
  auto lines = oracle::lines_of(files.at(0).content);
  auto header = oracle::split_fields(lines.at(0));
  EXPECT_EQ(header, gen::traffic_header());
  EXPECT_EQ(header.front(), "Site ID");
  EXPECT_EQ(oracle::split_fields(lines.at(1)).front(), "'000000001083");
}

TEST_F(CliTest, ChartCommand) {
  std::string t = put("c.csv", "weatherCond,avg_speed\nwet,25\ndry,40\n");
  Outcome r = invoke({"chart", t, "--category", "weatherCond", "--value", "avg_speed", "--out", path("c.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string svg = oracle::slurp(path("c.svg"));
  EXPECT_NE(svg.find(">40.00<"), std::string::npos);
}

TEST(Cli, NoArgumentsIsUsage) {
  EXPECT_EQ(invoke({}).code, wrangle::cli::kExitUsage);
  EXPECT_EQ(invoke({"list-ops"}).code, 0);
}
