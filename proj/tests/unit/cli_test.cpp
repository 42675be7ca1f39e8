#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

namespace haraforge::cli {
namespace {

namespace fs = std::filesystem;

struct Output {
  int code;
  std::string out;
  std::string err;
};

Output run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("haraforge-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                       "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
    ASSERT_EQ(run_cli({"demo", dir.string()}).code, kExitOk);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string path(const char* name) const { return (dir / name).string(); }

  // Replaces the first `from` at or after `anchor`.
  void replace_in(const char* name, std::string_view from, std::string_view to, std::string_view anchor = {}) {
    std::ifstream in(path(name));
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string text = buffer.str();
    const auto start = text.find(anchor);
    ASSERT_NE(start, std::string::npos);
    const auto at = text.find(from, start);
    ASSERT_NE(at, std::string::npos);
    text.replace(at, from.size(), to);
    std::ofstream(path(name), std::ios::trunc) << text;
  }

  fs::path dir;
};

TEST(Cli, AsilLookup) {
  EXPECT_EQ(run_cli({"asil", "S3", "E4", "C3"}).out, "ASIL D\n");
  EXPECT_EQ(run_cli({"asil", "S3 E4 C3"}).out, "ASIL D\n");
  EXPECT_EQ(run_cli({"asil", "S0", "E1", "C1"}).out, "QM\n");
  EXPECT_EQ(run_cli({"asil", "S2", "E3", "C2"}).out, "ASIL A\n");
  const Output bad = run_cli({"asil", "S5", "E1", "C1"});
  EXPECT_EQ(bad.code, kExitFailure);
  EXPECT_NE(bad.err.find("S5"), std::string::npos);
  EXPECT_EQ(run_cli({"asil", "S1", "E1"}).code, kExitFailure);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kExitFailure);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitFailure);
  EXPECT_EQ(run_cli({"validate", "only-one"}).code, kExitFailure);
  const Output help = run_cli({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("validate"), std::string::npos);
}

TEST_F(CliTest, DemoFilesValidateClean) {
  const Output o = run_cli({"validate", path("afas.item"), path("afas-r6.hara"), "--history", dir.string()});
  EXPECT_EQ(o.code, kExitOk) << o.out << o.err;
  EXPECT_EQ(o.out, "");
}

TEST_F(CliTest, ValidateReportsErrors) {
  replace_in("afas-r6.hara", "  C3 \"", "  C2 \"", "entry 37a\n");
  const Output o = run_cli({"validate", path("afas.item"), path("afas-r6.hara")});
  EXPECT_EQ(o.code, kExitFindings);
  EXPECT_EQ(o.out.rfind("R3\t", 0), 0u) << o.out;
}

TEST_F(CliTest, MachineOutputIsJsonPerLine) {
  replace_in("afas-r6.hara", "  goal SG06\n", "  goal SG02\n");
  const Output o = run_cli({"validate", path("afas.item"), path("afas-r6.hara"), "--machine"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  std::istringstream lines(o.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto record = nlohmann::json::parse(line);
    EXPECT_EQ(record.at("rule"), "R9");
    EXPECT_EQ(record.at("location"), "goal SG06");
    EXPECT_EQ(record.at("severity"), "warning");
    EXPECT_TRUE(record.at("message").is_string());
    ++count;
  }
  EXPECT_EQ(count, 1);
  EXPECT_EQ(run_cli({"validate", path("afas.item"), path("afas-r6.hara"), "--strict"}).code, kExitFindings);
}

TEST_F(CliTest, ParseErrorsGoToStderr) {
  replace_in("afas-r6.hara", "revision 6", "revision six");
  const Output o = run_cli({"validate", path("afas.item"), path("afas-r6.hara")});
  EXPECT_EQ(o.code, kExitFailure);
  EXPECT_NE(o.err.find("afas-r6.hara:1:"), std::string::npos) << o.err;
  EXPECT_EQ(o.out, "");
}

TEST_F(CliTest, MissingFile) {
  const Output o = run_cli({"validate", path("afas.item"), path("nope.hara")});
  EXPECT_EQ(o.code, kExitFailure);
  EXPECT_NE(o.err.find("cannot read"), std::string::npos);
}

TEST_F(CliTest, Diff) {
  const Output o = run_cli({"diff", path("afas-r5.hara"), path("afas-r6.hara"), path("afas.item"), "--history",
                            dir.string()});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("Classification: safety-refinement"), std::string::npos);
}

TEST_F(CliTest, GenerateUncovered) {
  const Output all = run_cli({"generate", path("afas.item")});
  EXPECT_EQ(all.code, kExitOk);
  EXPECT_NE(all.out.find("steering/MORE/FollowMode\n"), std::string::npos);
  EXPECT_EQ(run_cli({"generate", path("afas.item"), "--uncovered", path("afas-r6.hara")}).out, "");
}

TEST_F(CliTest, ReportFormats) {
  const Output md = run_cli({"report", path("afas.item"), path("afas-r6.hara")});
  EXPECT_EQ(md.code, kExitOk);
  EXPECT_NE(md.out.find("| SG03 |"), std::string::npos);
  EXPECT_NE(md.out.find("| ASIL | Entries |"), std::string::npos);

  const Output csv = run_cli({"report", path("afas.item"), path("afas-r6.hara"), "--format", "csv"});
  std::ifstream in(path("afas-r6.csv"));
  std::stringstream expected;
  expected << in.rdbuf();
  EXPECT_EQ(csv.out, expected.str());
  EXPECT_EQ(run_cli({"report", path("afas.item"), path("afas-r6.hara"), "--format", "pdf"}).code, kExitFailure);
}

}  // namespace
}  // namespace haraforge::cli
