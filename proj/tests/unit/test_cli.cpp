#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cli.hpp"

namespace sqdiff {
namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + "sqdiff_cli_" + name;
  std::ofstream(path) << body;
  return path;
}

TEST(Cli, ConstructAndVerify) {
  const std::string path = ::testing::TempDir() + "sqdiff_cli_greedy.txt";
  auto r = run({"construct", "--kind", "greedy", "--N", "100", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], "sqdiff/1");
  EXPECT_EQ(j["size"], 21);
  r = run({"verify", "--set", path, "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["sdf"], true);

  const auto bad = temp_file("bad.txt", "# N=10\n1\n5\n");
  r = run({"verify", "--set", bad});
  EXPECT_EQ(r.code, 1);
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["witness"]["n"], 2);
}

TEST(Cli, Energy) {
  const auto path = temp_file("B.txt", "1/2\n1/3\n2/3\n");
  for (const char* backend : {"brute", "mitm", "conv"}) {
    const auto r = run({"energy", "--set", path, "--m", "2", "--backend", backend});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["energy"], 19);
  }
}

TEST(Cli, Decompose) {
  const auto A = temp_file("dA.txt", "1/2\n1/3\n2/3\n1/4\n3/4\n");
  const auto C = temp_file("dC.txt", "1/6\n-1/4\n1/12\n");
  const auto r = run({"decompose", "--A", A, "--B", A, "--C", C, "--T", "auto", "--omega", "tau3pow:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["all_passed"], true);
}

TEST(Cli, IncrementAndSpectrum) {
  const std::string path = ::testing::TempDir() + "sqdiff_cli_planted.txt";
  ASSERT_EQ(run({"construct", "--kind", "planted", "--N", "10000", "--q", "2", "--r", "1", "--out", path}).code, 0);
  const auto consts = temp_file("consts.txt", "C_kdef = 0.001\nc0_nprime = 1\n");
  auto r = run({"increment", "--set", path, "--q", "2", "--K", "1", "--constants", consts});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["found"], true);
  const std::string greedy = ::testing::TempDir() + "sqdiff_cli_greedy1e4.txt";
  ASSERT_EQ(run({"construct", "--kind", "greedy", "--N", "10000", "--out", greedy}).code, 0);
  r = run({"spectrum", "--set", greedy, "--C", "0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j["frequencies"].empty());
}

TEST(Cli, Errors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"energy"}).code, 2);
  EXPECT_EQ(run({"construct", "--kind", "nope", "--N", "5"}).code, 2);
  const auto r = run({"verify", "--set", "/nonexistent/file"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(nlohmann::json::parse(r.err)["kind"], "error");
  EXPECT_EQ(run({"--help"}).code, 0);
}

}  // namespace
}  // namespace sqdiff
