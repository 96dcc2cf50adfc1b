#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

namespace {

const std::string kCli = LCANORM_CLI;
const std::string kSamples = LCANORM_SAMPLES;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = "'" + kCli + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sample(const std::string& name) { return "--spec '" + kSamples + "/" + name + "'"; }

}  // namespace

TEST(Cli, NormCollapseOnZ4) {
  const auto r = run("norm " + sample("norm_collapse_z4.json"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("jp").get<double>(), j.at("lp").at("2").get<double>(), 1e-12);
}

TEST(Cli, NormCoveringConstant) {
  const auto r = run("norm " + sample("norm_covering_z.json"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("covering").at("count").get<int>(), 2);
  EXPECT_NEAR(j.at("covering").at("constant").get<double>(), std::sqrt(2.0), 1e-12);
  EXPECT_LE(j.at("jp_window2").get<double>(), std::sqrt(2.0) * j.at("jp").get<double>() + 1e-10);
}

TEST(Cli, NormOfIndicatorIsWindowMeasure) {
  const auto path = temp_file("indicator.json", R"({"task": "norm",
    "group": {"kind": "IntegerWindow", "halfwidth": 20},
    "function": {"expr": "1", "support": {"from": 0, "to": 4}},
    "space": {"family": "Jp", "p": 2, "window": {"from": 0, "to": 4}}})");
  const auto r = run("norm --spec '" + path + "'");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out).at("value").get<double>(), std::sqrt(5.0), 1e-12);
}

TEST(Cli, TransformValues) {
  const auto r = run("transform " + sample("transform_z_plus.json"));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j.at("measure").at("re").get<double>(), 0.5, 1e-15);
  EXPECT_NEAR(j.at("function").at("re").get<double>(), 1.5, 1e-15);

  const auto path = run("transform " + sample("transform_boundary_path.json"));
  ASSERT_EQ(path.code, 0);
  const auto seq = nlohmann::json::parse(path.out).at("boundary_sequence");
  ASSERT_EQ(seq.size(), 100u);
  EXPECT_LE(seq.back().at("deviation").get<double>(), seq.back().at("bound").get<double>());
}

TEST(Cli, OpnormReportAndCsv) {
  const auto csv = ::testing::TempDir() + "z3.csv";
  const auto json_path = ::testing::TempDir() + "z3.json";
  const auto r = run("opnorm " + sample("opnorm_z3_l2.json") + " --csv '" + csv + "' --json '" + json_path + "'");
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  const auto j = nlohmann::json::parse(slurp(json_path));
  EXPECT_NEAR(j.at("exact_value").get<double>(), std::sqrt(3.0), 1e-10);
  EXPECT_TRUE(j.at("consistent").get<bool>());
  EXPECT_EQ(slurp(csv).substr(0, slurp(csv).find('\n')),
            "group,space,p,fourier_lb,lambda_lb,ascent_estimate,exact_value,tv_ub,consistent");
}

TEST(Cli, OpnormZeroAndDirac) {
  const auto zero = run("opnorm " + sample("opnorm_zero.json"));
  ASSERT_EQ(zero.code, 0);
  EXPECT_NE(zero.out.find("Z_5,Lp,1,0,,0,0,0,true"), std::string::npos);
  const auto dirac = run("opnorm " + sample("opnorm_dirac.json"));
  ASSERT_EQ(dirac.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(dirac.out.substr(0, dirac.out.find("group,"))).at("consistent").get<bool>());
}

TEST(Cli, CsvIsByteIdenticalAcrossRuns) {
  const auto a = ::testing::TempDir() + "a.csv", b = ::testing::TempDir() + "b.csv";
  ASSERT_EQ(run("opnorm " + sample("opnorm_cone_jp.json") + " --csv '" + a + "'").code, 0);
  ASSERT_EQ(run("opnorm " + sample("opnorm_cone_jp.json") + " --csv '" + b + "'").code, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
  const auto c = ::testing::TempDir() + "c.csv";
  ASSERT_EQ(run("opnorm " + sample("opnorm_cone_jp.json") + " --seed 8 --csv '" + c + "'").code, 0);
}

TEST(Cli, MalformedJsonExitsTwo) {
  const auto path = temp_file("bad.json", "{\n  \"task\": \"norm\",\n  oops\n}");
  EXPECT_EQ(run("norm --spec '" + path + "'").code, 2);
}

TEST(Cli, InconsistentSpecExitsThree) {
  EXPECT_EQ(run("norm " + sample("opnorm_z3_l2.json")).code, 3);
  const auto path = temp_file("cone_fp.json", R"({"task": "opnorm",
    "group": {"kind": "FiniteProduct", "orders": [3], "cone_only": true},
    "measure": {"atoms": []}, "space": {"family": "Lp", "p": 1}})");
  EXPECT_EQ(run("opnorm --spec '" + path + "'").code, 3);
  EXPECT_EQ(run("opnorm --spec /nonexistent/problem.json").code, 3);
}

TEST(Cli, VerifyExitCodesAndReplay) {
  const auto ok = run("verify " + sample("verify.json"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find(", 0 failed"), std::string::npos);

  const auto failing = ::testing::TempDir() + "failing.json";
  EXPECT_EQ(run("verify --inject-fault --json '" + failing + "'").code, 1);
  const auto replayed = run("verify --spec '" + failing + "'");
  EXPECT_EQ(replayed.code, 1);
  EXPECT_NE(replayed.out.find("sandwich_ordering: FAIL"), std::string::npos);
}
