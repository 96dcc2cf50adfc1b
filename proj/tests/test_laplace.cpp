#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lcanorm/laplace.hpp"

using namespace lcanorm;

namespace {

const SpectralPoint kTwo{{0.0}, std::log(2.0)};

}  // namespace

TEST(LaplaceFunction, Examples) {
  const Group cone = make_group(IntegerWindowDesc{60, true});
  GridFunction delta(cone);
  delta[0] = 1.0;
  EXPECT_EQ(laplace_function(delta, {{1.3}, 0.7}), Complex(1.0));

  GridFunction pair(cone);
  pair[0] = pair[1] = 1.0;
  EXPECT_NEAR(std::abs(laplace_function(pair, kTwo) - 1.5), 0.0, 1e-15);

  GridFunction ones(cone);
  for (auto& v : ones.values()) v = 1.0;
  EXPECT_NEAR(laplace_function(ones, kTwo).real(), 2.0, 1e-15);
}

TEST(LaplaceFunction, Errors) {
  const Group cone = make_group(IntegerWindowDesc{5, true});
  try {
    laplace_function(GridFunction(cone), {{0.0}, 0.0});
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "not in Λ");
  }
  const Group z = make_group(IntegerWindowDesc{5, false});
  EXPECT_THROW(laplace_function(GridFunction(z), kTwo), Error);
}

TEST(LaplaceMeasure, Examples) {
  const Group cone = make_group(IntegerWindowDesc{10, true});
  EXPECT_EQ(laplace_measure(dirac(cone, Element{0}), {{2.0}, 0.3}), Complex(1.0));
  EXPECT_NEAR(laplace_measure(dirac(cone, Element{1}), kTwo).real(), 0.5, 1e-15);

  const Group r = make_group(RealGridDesc{5.0, 0.01, true});
  EXPECT_NEAR(laplace_measure(dirac(r, 1.0), {{0.0}, 1.0}).real(), 0.3678794, 1e-7);
}

TEST(LaplaceMeasure, BoundedByTotalVariation) {
  const Group cone = make_group(IntegerWindowDesc{20, true});
  const Measure mu(cone, {{{0}, Complex(0.3, -1.0)}, {{4}, -0.7}, {{9}, Complex(0.0, 2.0)}});
  for (const auto& s : lambda_grid(cone, {2.0, 0.5, 0.01}, 64)) EXPECT_LE(std::abs(laplace_measure(mu, s)), total_variation(mu) + 1e-12);
}

TEST(DecayBound, GeometricEquality) {
  const Group cone = make_group(IntegerWindowDesc{2000, true});
  GridFunction ones(cone);
  for (auto& v : ones.values()) v = 1.0;
  const auto r = decay_bound_check(ones, kTwo, Window::point(cone, {0}), 1.0);
  EXPECT_NEAR(r.lhs, 2.0, 1e-12);
  EXPECT_NEAR(r.rhs, 2.0, 1e-12);
  EXPECT_TRUE(r.holds());

  const auto zero = decay_bound_check(GridFunction(cone), kTwo, Window::point(cone, {0}), 1.0);
  EXPECT_EQ(zero.lhs, 0.0);
  EXPECT_EQ(zero.rhs, 0.0);
}

TEST(DecayBound, IndicatorOnRealCone) {
  const double h = 0.01, T = 3.0;
  const Group r = make_group(RealGridDesc{10.0, h, true});
  const GridFunction f = GridFunction::tabulate(r, [=](double x) { return x < T ? 1.0 : 0.0; });
  const auto b = decay_bound_check(f, {{0.0}, 1.0}, Window::interval(r, 0.0, 1.0), 1.0);
  EXPECT_NEAR(b.lhs, 1.0 - std::exp(-T), 2.0 * h);
  EXPECT_NEAR(b.rhs, 1.0 / (1.0 - std::exp(-1.0)), 2.0 * h);
  EXPECT_TRUE(b.holds());
}

TEST(DecayBound, Preconditions) {
  const Group cone = make_group(IntegerWindowDesc{10, true});
  EXPECT_THROW(decay_bound_check(GridFunction(cone), kTwo, Window::point(cone, {0}), 0.0), Error);
  EXPECT_THROW(decay_bound_check(GridFunction(cone), kTwo, Window::point(cone, {0}), 2.0), Error);
}

TEST(ConvolutionIdentity, WorkedExampleAndIdentity) {
  const Group cone = make_group(IntegerWindowDesc{10, true});
  GridFunction f(cone);
  f[0] = f[1] = 1.0;
  const GridFunction conv = convolve(f, dirac(cone, Element{1}));
  EXPECT_NEAR(laplace_function(conv, kTwo).real(), 0.75, 1e-15);
  EXPECT_LE(convolution_identity_residual(f, dirac(cone, Element{1}), kTwo), 1e-15);
  EXPECT_EQ(convolution_identity_residual(f, dirac(cone, Element{0}), {{0.4}, 0.9}), 0.0);
}

TEST(ConvolutionIdentity, RandomOnZPlus) {
  const Group cone = make_group(IntegerWindowDesc{60, true});
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    GridFunction f(cone);
    for (int i = 0; i < 20; ++i) f[static_cast<std::size_t>(i)] = {u(rng), u(rng)};
    Measure mu(cone);
    for (int k = 0; k < 4; ++k) mu.add_atom(Element{static_cast<Coord>(rng() % 20)}, u(rng));
    EXPECT_LE(convolution_identity_residual(f, mu, {{1.1}, 0.3}), 1e-9);
  }
}

TEST(Boundary, SingleAtomClosedForm) {
  const Group cone = make_group(IntegerWindowDesc{10, true});
  const auto path = boundary_path({{0.9}, 0.0}, 1.0, 100);
  ASSERT_EQ(path.terms.size(), 100u);
  EXPECT_EQ(path.terms[9].alpha, 0.1);
  const auto seq = boundary_sequence(dirac(cone, Element{1}), path);
  EXPECT_NEAR(seq[9].deviation, 0.09516, 1e-5);
  for (std::size_t n = 1; n <= 100; ++n) {
    EXPECT_NEAR(seq[n - 1].deviation, 1.0 - std::exp(-1.0 / static_cast<double>(n)), 1e-12);
    if (n > 1) {
      EXPECT_LE(seq[n - 1].deviation, seq[n - 2].deviation);
    }
  }
  for (const auto& step : boundary_sequence(dirac(cone, Element{0}), path)) EXPECT_EQ(step.deviation, 0.0);
}

TEST(Boundary, TwoAtomTriangleBound) {
  const Group cone = make_group(IntegerWindowDesc{10, true});
  const Measure mu(cone, {{{1}, 1.0}, {{2}, 1.0}});
  const auto seq = boundary_sequence(mu, boundary_path({{0.4}, 0.0}, 1.0, 100));
  EXPECT_NEAR(seq.back().bound, 0.0396, 1e-4);
  EXPECT_LE(seq.back().deviation, seq.back().bound);
}

TEST(Boundary, IndexReachesEps) {
  const Group cone = make_group(IntegerWindowDesc{10, true});
  const Measure mu(cone, {{{3}, Complex(0.5, 0.5)}, {{7}, -1.0}});
  for (double eps : {0.1, 0.01, 1e-4}) {
    const std::size_t N = boundary_index(mu, 0.8, eps);
    const SpectralPoint gamma{{1.2}, 0.0};
    const Complex at_gamma = fourier_stieltjes(mu, gamma);
    EXPECT_LT(std::abs(laplace_measure(mu, {{1.2}, 0.8 / static_cast<double>(N)}) - at_gamma), eps);
  }
}

TEST(Boundary, PathPreconditions) {
  EXPECT_THROW(boundary_path({{0.0}, 0.5}, 1.0, 10), Error);
  EXPECT_THROW(boundary_path({{0.0}, 0.0}, 0.0, 10), Error);
  EXPECT_THROW(boundary_path({{0.0}, 0.0}, 1.0, 0), Error);
}

TEST(SupLambda, Examples) {
  const Group cone = make_group(IntegerWindowDesc{10, true});
  EXPECT_EQ(sup_lambda(dirac(cone, Element{0}), lambda_grid(cone, {1.0}, 8)), 1.0);
  const double coarse = sup_lambda(dirac(cone, Element{1}), lambda_grid(cone, {0.5}, 8));
  const double fine = sup_lambda(dirac(cone, Element{1}), lambda_grid(cone, {0.01}, 8));
  EXPECT_LT(coarse, fine);
  EXPECT_LT(fine, 1.0);

  std::vector<double> alphas;
  for (double a = 0.01; a <= 2.0; a += 0.01) alphas.push_back(a);
  const Measure diff(cone, {{{0}, 1.0}, {{1}, -1.0}});
  const double s = sup_lambda(diff, lambda_grid(cone, alphas, 360));
  EXPECT_GT(s, 1.98);
  EXPECT_LE(s, 2.0);
}
