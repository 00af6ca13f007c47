#include <array>
#include <cstdio>
#include <sstream>

#include <gtest/gtest.h>

#include "fibsurf/cli.hpp"
#include "support.hpp"

namespace fibsurf {
namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return testing::data_path(name); }
std::string fixture(const std::string& name) { return testing::fixture_path(name); }

TEST(Cli, ResolveCuspPrintsThreeCurveChain) {
  const auto r = run({"resolve", "--p", "2", "--q", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("3 exceptional curves"), std::string::npos);
  EXPECT_NE(r.out.find("E1 v=(1,1) vertical-over-inf mult 1 self -3"), std::string::npos);
  EXPECT_NE(r.out.find("E2 v=(2,1) vertical-over-0 mult 1 self -2"), std::string::npos);
  EXPECT_NE(r.out.find("E3 v=(3,2) horizontal"), std::string::npos);
  EXPECT_NE(r.out.find("fiber over 0:   2X' + E2"), std::string::npos);
  EXPECT_NE(r.out.find("fiber over inf: 3Y' + E1"), std::string::npos);
}

TEST(Cli, ResolveStructured) {
  const auto r = run({"resolve", "--p", "2", "--q", "3", "--format", "structured"});
  ASSERT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["curves"].size(), 3u);
  EXPECT_EQ(doc["curves"][2]["valuation"], json({3, 2}));
}

TEST(Cli, ReportOnModelWithoutMultipleFibers) {
  const auto r = run({"report", data("minimal_model.json"), "--format", "structured"});
  EXPECT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["euler_balance"]["lhs"], 0);
  EXPECT_EQ(doc["euler_balance"]["rhs"], 0);
}

TEST(Cli, TextAndStructuredReportsAgree) {
  const auto text = run({"report", data("double_fiber.json")});
  const auto structured = run({"report", data("double_fiber.json"), "--format", "structured"});
  ASSERT_EQ(text.code, 0);
  ASSERT_EQ(structured.code, 0);
  EXPECT_EQ(text.out, render_text(json::parse(structured.out)));
}

TEST(Cli, ReduceWithNonMultipleFails) {
  const auto r = run({"reduce", data("double_fiber.json"), "--N", "3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("N not a common multiple"), std::string::npos);
}

TEST(Cli, ReduceWithSweep) {
  const auto r = run({"reduce", data("double_fiber.json"), "--N", "4", "--sweep", "2,4,6,8", "--format", "structured"});
  EXPECT_EQ(r.code, 0);
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["ramification"]["A"], 2);
  EXPECT_TRUE(doc["sweep"]["holds"].get<bool>());
  EXPECT_EQ(run({"reduce", data("double_fiber.json"), "--N", "4", "--sweep", "2,4"}).code, 2);
}

TEST(Cli, BoundsAtBoundary) {
  const auto r = run({"bounds", data("minimal_model.json"), "--n", "1", "--h0-kf", "1", "--h0-kbar", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("kf_square: 2"), std::string::npos);
  const auto cover = run({"bounds", data("horizontal_section.json"), "--n", "1", "--h0-kf", "0", "--h0-kbar", "0",
                          "--cover", "--format", "structured"});
  EXPECT_EQ(json::parse(cover.out)["minimal_cover_degree"], 8);
}

TEST(Cli, GenIsDeterministicAndParsable) {
  const auto a = run({"gen", "--seed", "5", "--count", "20"});
  const auto b = run({"gen", "--seed", "5", "--count", "20"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream lines(a.out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    EXPECT_TRUE(validate(parse_model(line)).valid());
    ++n;
  }
  EXPECT_EQ(n, 20);
}

TEST(Cli, PencilAssemblesAndEmits) {
  EXPECT_EQ(run({"pencil", data("cubic_pencil.json")}).code, 0);
  const auto emitted = run({"pencil", data("cusp_pencil.json"), "--emit"});
  ASSERT_EQ(emitted.code, 0);
  EXPECT_EQ(parse_model(emitted.out), testing::cusp_pencil_model());
}

TEST(Cli, MalformedFilesExitTwoWithFieldPath) {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"asymmetric_pairing.json", "/pairing/0/2"}, {"unknown_field.json", "/surface/q"},
      {"float_entry.json", "/pairing/0/1"},        {"missing_field.json", "declared_genus"},
      {"wrong_version.json", "/format_version"},   {"undeclared_class.json", "/fibers/0/components/0/class"},
      {"truncated.json", "line"}};
  for (const auto& [file, where] : cases) {
    const auto r = run({"validate", fixture(file)});
    EXPECT_EQ(r.code, 2) << file;
    EXPECT_NE(r.err.find(where), std::string::npos) << file << ": " << r.err;
  }
}

TEST(Cli, InvalidModelExitsOne) {
  const auto r = run({"validate", fixture("fiber_not_equivalent.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("not numerically equivalent"), std::string::npos);
  EXPECT_EQ(run({"report", fixture("fiber_not_equivalent.json")}).code, 1);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"resolve", "--p", "2"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"validate", "/nonexistent/model.json"}).code, 2);
  EXPECT_EQ(run({"report", data("minimal_model.json"), "--format", "yaml"}).code, 2);
}

TEST(Cli, BinaryExitCodes) {
  const std::string bin = FIBSURF_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("resolve --p 2 --q 3"), 0);
  EXPECT_EQ(status("reduce " + data("double_fiber.json") + " --N 3"), 1);
  EXPECT_EQ(status("validate " + fixture("asymmetric_pairing.json")), 2);
}

}  // namespace
}  // namespace fibsurf
