#include <cmath>

#include <gtest/gtest.h>

#include "lcanorm/expr.hpp"
#include "lcanorm/problem.hpp"

using namespace lcanorm;
using io::json;

TEST(Expression, ArithmeticAndFunctions) {
  EXPECT_DOUBLE_EQ(Expression("1 + 2 * 3")(0.0), 7.0);
  EXPECT_DOUBLE_EQ(Expression("-2^2")(0.0), -4.0);
  EXPECT_DOUBLE_EQ(Expression("2^3^2")(0.0), 512.0);
  EXPECT_DOUBLE_EQ(Expression("exp(-x) * sin(3*x)^2")(0.5), std::exp(-0.5) * std::pow(std::sin(1.5), 2));
  EXPECT_DOUBLE_EQ(Expression("step(x - 1)")(0.5), 0.0);
  EXPECT_DOUBLE_EQ(Expression("step(x - 1)")(1.0), 1.0);
  EXPECT_DOUBLE_EQ(Expression("x0 * 10 + x1")(std::vector<double>{2.0, 3.0}), 23.0);
  EXPECT_NEAR(Expression("cos(pi) + log(e)")(0.0), 0.0, 1e-15);
}

TEST(Expression, Errors) {
  EXPECT_THROW(Expression("1 +"), Error);
  EXPECT_THROW(Expression("foo(1)"), Error);
  EXPECT_THROW(Expression("(1"), Error);
  EXPECT_THROW(Expression("y"), Error);
  EXPECT_THROW(Expression("x3")(std::vector<double>{1.0}), Error);
}

TEST(ParseJson, ReportsLineAndColumn) {
  try {
    io::parse_json_text("{\n  \"a\": 1,\n  \"b\": ]\n}");
    FAIL() << "expected a parse error";
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 8u);
  }
}

TEST(ParseProblem, FullOpnormSpec) {
  const auto spec = io::parse_problem(json::parse(R"({
    "task": "opnorm",
    "group": {"kind": "FiniteProduct", "orders": [3]},
    "measure": {"atoms": [{"at": 0, "re": 1}, {"at": 1, "re": -1}]},
    "space": {"family": "Lp", "p": "inf"},
    "options": {"budget": 100, "seed": 9}
  })"));
  EXPECT_EQ(*spec.task, io::Task::Opnorm);
  EXPECT_EQ(total_variation(*spec.measure), 2.0);
  EXPECT_EQ(spec.space->p, kInfinity);
  EXPECT_EQ(spec.options.budget, 100u);
  EXPECT_EQ(spec.options.seed, 9u);
  EXPECT_EQ(spec.options.resolution, 1024u);
}

TEST(ParseProblem, Defaults) {
  const auto spec = io::parse_problem(json::parse(R"({"task": "verify"})"));
  EXPECT_EQ(spec.options.resolution, 1024u);
  EXPECT_EQ(spec.options.budget, 5000u);
  EXPECT_EQ(spec.options.seed, 42u);
}

TEST(ParseProblem, InconsistentSpecs) {
  EXPECT_THROW(io::parse_problem(json::parse(R"({"task": "dance"})")), io::SpecError);
  EXPECT_THROW(io::parse_problem(json::parse(R"({"measure": {"atoms": []}})")), io::SpecError);
  EXPECT_THROW(io::parse_problem(json::parse(R"({"group": {"kind": "FiniteProduct", "orders": [3], "cone_only": true}})")),
               io::SpecError);
  EXPECT_THROW(io::parse_problem(json::parse(R"({"group": {"kind": "IntegerWindow", "halfwidth": 3, "cone_only": true},
                                                 "measure": {"atoms": [{"at": -1, "re": 1}]}})")),
               io::SpecError);
  EXPECT_THROW(io::parse_problem(json::parse(R"({"group": {"kind": "IntegerWindow", "halfwidth": 3},
                                                 "space": {"family": "Jp", "p": 2}})")),
               io::SpecError);
  EXPECT_THROW(io::parse_problem(json::parse(R"({"group": {"kind": "IntegerWindow", "halfwidth": 3},
                                                 "space": {"family": "Jp", "p": "inf", "window": {"points": [0]}}})")),
               io::SpecError);
}

TEST(ParseFunction, SamplesExpressionsAndRoundTrip) {
  const Group r = make_group(RealGridDesc{2.0, 0.5, true});
  const GridFunction f = io::parse_function(r, json::parse(R"({"expr": "x^2", "imag": "1", "support": {"from": 0, "to": 1}})"));
  EXPECT_EQ(f[1], Complex(0.25, 1.0));
  EXPECT_EQ(f[2], Complex(0.0));
  EXPECT_TRUE(io::parse_function(r, io::function_to_json(f)) == f);

  const Group z = make_group(FiniteProductDesc{{3}});
  EXPECT_TRUE(io::parse_function(z, json::parse(R"({"samples": [1, 2, 3]})")) == GridFunction(z, {1.0, 2.0, 3.0}));
  EXPECT_THROW(io::parse_function(z, json::parse(R"({"samples": [1, 2]})")), io::SpecError);
}

TEST(ParseMeasure, RoundTripsWithDensity) {
  const Group r = make_group(RealGridDesc{2.0, 0.25, false});
  Measure mu(r);
  mu.add_atom(0.5, Complex(0.1, -0.3));
  mu.set_density(GridFunction::tabulate(r, [](double x) { return std::exp(-x * x) / 3.0; }));
  const Measure back = io::parse_measure(r, io::measure_to_json(mu));
  EXPECT_EQ(back.atoms().size(), 1u);
  EXPECT_EQ(back.atoms()[0].weight, mu.atoms()[0].weight);
  EXPECT_TRUE(*back.density() == *mu.density());
}

TEST(Csv, HeaderAndRow) {
  SandwichReport r;
  r.group = "Z[-3,3]";
  r.space = "Lp";
  r.p = 2.0;
  r.fourier_lb = 0.1;
  r.ascent_estimate = 1.0 / 3.0;
  r.tv_ub = 1.0;
  r.consistent = true;
  EXPECT_STREQ(io::csv_header(), "group,space,p,fourier_lb,lambda_lb,ascent_estimate,exact_value,tv_ub,consistent");
  EXPECT_EQ(io::csv_row(r), "\"Z[-3,3]\",Lp,2,0.10000000000000001,,0.33333333333333331,,1,true");
  const json j = io::report_to_json(r);
  EXPECT_TRUE(j.at("lambda_lb").is_null());
  EXPECT_EQ(j.at("tv_ub").get<double>(), 1.0);
}
