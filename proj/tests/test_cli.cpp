#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + HYPMETRICS_CLI + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

const std::string kPlane = R"('{"kind":"punctured_space","p":[0,0]}')";
const std::string kDisk = R"('{"kind":"unit_ball","dim":2}')";

}  // namespace

TEST(Cli, EvalExamples) {
  CliRun r = run("eval --metric tau --domain " + kPlane + " --x 1,0 --y -1,0");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out).at("value").get<double>(), 1.09861, 1e-5);

  r = run("eval --metric u --domain " + kDisk + " --x -0.5,0 --y 0.5,0");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out).at("value").get<double>(), 2.19722, 1e-5);

  r = run("eval --metric u --domain " + kDisk + " --x 0.2,0.1 --y 0.2,0.1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("value").get<double>(), 0.0);
}

TEST(Cli, EvalErrors) {
  EXPECT_EQ(run("eval --metric tau --domain '{\"kind\":' --x 0,0 --y 0,0").code, 2);
  EXPECT_EQ(run("eval --metric q --domain " + kDisk + " --x 0,0 --y 0,0").code, 2);
  EXPECT_EQ(run("eval --metric tau --domain " + kDisk + " --x 0,x --y 0,0").code, 2);
  EXPECT_EQ(run("eval --metric tau --domain " + kDisk + " --x 2,0 --y 0,0").code, 3);
  EXPECT_EQ(run("eval --metric tau --domain " + kDisk + " --x 0,0,0 --y 0,0").code, 3);
  EXPECT_EQ(run("eval --metric tau --domain " + kDisk).code, 2);
}

TEST(Cli, DomainFromFile) {
  const std::string path = testing::TempDir() + "hm_domain.json";
  std::ofstream(path) << R"({"kind":"unit_ball","dim":2})";
  const CliRun r = run("eval --metric j --file " + path + " --x 0.5,0 --y 0.75,0");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out).at("value").get<double>(), std::log(2.0), 1e-12);
}

TEST(Cli, VerifyExamples) {
  CliRun r = run("verify --check mobius_distortion --a 0.5,0 --samples 2000");
  ASSERT_EQ(r.code, 0);
  const json rep = json::parse(r.out).at(0);
  EXPECT_EQ(rep.at("check"), "mobius_distortion");
  EXPECT_TRUE(rep.at("passed").get<bool>());
  EXPECT_NE(rep.at("detail").get<std::string>().find("0.333333, 3.000000"), std::string::npos);

  r = run("verify --check bernoulli");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at(0).at("samples"), 10000);

  EXPECT_EQ(run("verify --check nonsense").code, 2);
  EXPECT_EQ(run("verify --check general_domain --domain " + kPlane + " --samples 10").code, 3);
}

TEST(Cli, SeedAndSamplesFromEnvironmentFlagsWin) {
  CliRun r = run("verify --check bernoulli", "HYPMETRICS_SEED=5 HYPMETRICS_SAMPLES=300");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out).at(0);
  EXPECT_EQ(j.at("seed"), 5);
  EXPECT_EQ(j.at("samples"), 300);
  r = run("verify --check bernoulli --seed 9 --samples 77", "HYPMETRICS_SEED=5 HYPMETRICS_SAMPLES=300");
  j = json::parse(r.out).at(0);
  EXPECT_EQ(j.at("seed"), 9);
  EXPECT_EQ(j.at("samples"), 77);
  EXPECT_EQ(run("verify --check bernoulli", "HYPMETRICS_SAMPLES=abc").code, 2);
  EXPECT_EQ(run("verify --check bernoulli --samples 0").code, 2);
}

TEST(Cli, ByteIdenticalOutput) {
  const std::string args = "verify --check sandwich --samples 500 --seed 3";
  const CliRun a = run(args);
  const CliRun b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST(Cli, Constants) {
  const CliRun r = run("constants");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("c").get<double>(), 0.76, 0.005);
  EXPECT_NEAR(j.at("t_star").get<double>(), 1.16, 0.005);
  EXPECT_LE(j.at("residual").get<double>(), 1e-10);
}

std::vector<std::array<double, 2>> csv_points(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y");
  std::vector<std::array<double, 2>> pts;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    pts.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return pts;
}

TEST(Cli, Ovals) {
  CliRun r = run("ovals --f1 -1,0 --f2 1,0 --level 1");
  ASSERT_EQ(r.code, 0);
  bool origin = false;
  for (const auto& p : csv_points(r.out)) origin = origin || std::hypot(p[0], p[1]) <= 1e-6;
  EXPECT_TRUE(origin);

  r = run("ovals --f1 -1,0 --f2 1,0 --level 2 --resolution 8");
  ASSERT_EQ(r.code, 0);
  const auto pts = csv_points(r.out);
  EXPECT_GE(pts.size(), 8u);
  bool top = false;
  for (const auto& p : pts) top = top || std::hypot(p[0], p[1] - std::sqrt(3.0)) <= 1e-6;
  EXPECT_TRUE(top);

  EXPECT_EQ(run("ovals --f1 1,0 --f2 1,0 --level 1").code, 2);
}

TEST(Cli, OutputFile) {
  const std::string path = testing::TempDir() + "hm_oval.csv";
  std::remove(path.c_str());
  ASSERT_EQ(run("ovals --f1 -1,0 --f2 1,0 --level 2 --resolution 8 --output " + path).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(csv_points(ss.str()).size(), 8u);
}

TEST(Cli, DistortExamples) {
  CliRun r = run("distort --map '{\"chain\":[{\"kind\":\"scaling\",\"factor\":1}]}' --domain " + kDisk +
              " --samples 300 --at 0.1,0");
  ASSERT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j.at("sup_ratio").get<double>(), 1.0);
  EXPECT_EQ(j.at("inf_ratio").get<double>(), 1.0);
  EXPECT_NEAR(j.at("dilatation").at(0).at("H").get<double>(), 1.0, 1e-9);

  r = run("distort --map '{\"chain\":[{\"kind\":\"scaling\",\"factor\":3}]}' --domain " + kDisk +
          " --image-domain '{\"kind\":\"ball\",\"center\":[0,0],\"radius\":3}' --samples 300");
  ASSERT_EQ(r.code, 0);
  j = json::parse(r.out);
  EXPECT_NEAR(j.at("sup_ratio").get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(j.at("inf_ratio").get<double>(), 1.0, 1e-12);

  r = run("distort --map '{\"chain\":[{\"kind\":\"inversion\",\"center\":[2,0],\"radius\":1.7320508075688772}]}'"
          " --domain '{\"kind\":\"punctured_unit_ball\",\"a\":[0,0]}'"
          " --image-domain '{\"kind\":\"punctured_unit_ball\",\"a\":[0.5,0]}' --samples 2000 --at 0.2,0");
  ASSERT_EQ(r.code, 0);
  j = json::parse(r.out);
  EXPECT_GE(j.at("inf_ratio").get<double>(), 1.0 / 3.0 - 1e-9);
  EXPECT_LE(j.at("sup_ratio").get<double>(), 3.0 + 1e-9);
  EXPECT_NEAR(j.at("dilatation").at(0).at("H").get<double>(), 1.0, 1e-2);
}

TEST(Cli, DistortErrors) {
  EXPECT_EQ(run("distort --map '{\"chain\":[{\"kind\":\"scaling\",\"factor\":3}]}' --domain " + kDisk).code, 3);
  EXPECT_EQ(run("distort --map '{\"chain\":[' --domain " + kDisk).code, 2);
  EXPECT_EQ(run("distort --map '{\"chain\":[{\"kind\":\"twist\"}]}' --domain " + kDisk).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}
