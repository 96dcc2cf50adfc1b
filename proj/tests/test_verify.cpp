#include <gtest/gtest.h>

#include "lcanorm/verify.hpp"

using namespace lcanorm;

TEST(Suite, DefaultSeedPasses) {
  const auto result = verify::run_suite();
  for (const auto& f : result.failures) ADD_FAILURE() << f.check << ": " << f.detail << "\n" << f.instance.dump();
  EXPECT_EQ(result.checks.size(), verify::checks().size());
  for (const auto& c : result.checks) EXPECT_GT(c.total, 0u) << c.name;
}

TEST(Suite, FineRealGridPasses) {
  verify::VerifyOptions opts;
  opts.step = 0.005;
  opts.seed = 7;
  EXPECT_TRUE(verify::run_suite(opts).ok());
}

TEST(Suite, InjectedFaultIsCaughtAndReplays) {
  verify::VerifyOptions opts;
  opts.inject_fault = true;
  const auto result = verify::run_suite(opts);
  ASSERT_FALSE(result.ok());
  for (const auto& f : result.failures) {
    EXPECT_EQ(f.check, "sandwich_ordering");
    EXPECT_FALSE(verify::replay(f.instance).passed);
    auto healthy = f.instance;
    healthy.erase("inject_fault");
    EXPECT_TRUE(verify::replay(healthy).passed) << healthy.dump();
  }
}

TEST(Suite, ReplayMatchesEveryVerdict) {
  verify::VerifyOptions opts;
  opts.instances = 3;
  opts.seed = 99;
  std::mt19937_64 rng(1);
  for (const auto& check : verify::checks()) {
    for (auto instance : check.generate(rng, opts)) {
      instance["check"] = check.name;
      const auto text = instance.dump();
      EXPECT_EQ(verify::replay(nlohmann::json::parse(text)).passed, verify::evaluate(check, instance).passed) << text;
    }
  }
}

TEST(Suite, ReplayRejectsUnknownChecks) {
  EXPECT_THROW(verify::replay(nlohmann::json{{"check", "nope"}}), io::SpecError);
  EXPECT_THROW(verify::replay(nlohmann::json::object()), io::SpecError);
}
