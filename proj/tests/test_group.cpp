#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "lcanorm/group.hpp"

using namespace lcanorm;

TEST(Group, FiniteProductHasUnitWeights) {
  const Group g = make_group(FiniteProductDesc{{4}});
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(g.weight(), 1.0);
  EXPECT_TRUE(g.is_compact());
  EXPECT_EQ(g.add({3}, {2}), Element{1});
}

TEST(Group, RealGridCountsPointsAndWeight) {
  const Group g = make_group(RealGridDesc{10.0, 0.01, false});
  EXPECT_EQ(g.size(), 2001u);
  EXPECT_DOUBLE_EQ(g.weight(), 0.01);
  EXPECT_NEAR(g.position(g.index_or_throw(g.locate(2.5))), 2.5, 1e-12);
}

TEST(Group, ConeWindowStartsAtZero) {
  const Group g = make_group(IntegerWindowDesc{50, true});
  EXPECT_EQ(g.size(), 51u);
  EXPECT_EQ(g.lo(), 0);
  EXPECT_EQ(g.hi(), 50);
  EXPECT_FALSE(g.contains({-1}));
}

TEST(Group, WindowAdditionDoesNotWrap) {
  const Group g = make_group(IntegerWindowDesc{5, false});
  EXPECT_FALSE(g.add({4}, {3}).has_value());
  EXPECT_EQ(*g.add({-4}, {3}), Element{-1});
}

TEST(Group, RejectsBadDescriptors) {
  EXPECT_THROW(make_group(FiniteProductDesc{{1}}), Error);
  EXPECT_THROW(make_group(FiniteProductDesc{{}}), Error);
  EXPECT_THROW(make_group(IntegerWindowDesc{0, false}), Error);
  EXPECT_THROW(make_group(RealGridDesc{1.0, 0.3, false}), Error);
  EXPECT_THROW(make_group(RealGridDesc{1.0, -0.1, false}), Error);
}

TEST(Group, DescriptorRoundTrips) {
  for (const GroupDescriptor& d : {GroupDescriptor{FiniteProductDesc{{3, 5}}}, GroupDescriptor{IntegerWindowDesc{7, true}},
                                   GroupDescriptor{RealGridDesc{2.5, 0.25, false}}}) {
    const Group g = make_group(d);
    EXPECT_TRUE(make_group(g.descriptor()) == g);
  }
}

TEST(Haar, CountingAndStepMeasure) {
  const Group z = make_group(IntegerWindowDesc{20, false});
  EXPECT_EQ(haar_measure(z, Window::interval(z, 0, 4)), 5.0);
  const Group r = make_group(RealGridDesc{5.0, 0.1, false});
  const Window K = Window::interval(r, 0.0, 1.0);
  EXPECT_EQ(K.size(), 10u);
  EXPECT_NEAR(haar_measure(r, K), 1.0, 1e-12);
  const Group z4 = make_group(FiniteProductDesc{{4}});
  EXPECT_EQ(haar_measure(z4, Window::whole(z4)), 4.0);
}

TEST(Haar, AdditiveOverDisjointWindows) {
  const Group r = make_group(RealGridDesc{5.0, 0.1, false});
  const double a = haar_measure(r, Window::interval(r, 0.0, 1.0));
  const double b = haar_measure(r, Window::interval(r, 1.0, 2.5));
  EXPECT_NEAR(a + b, haar_measure(r, Window::interval(r, 0.0, 2.5)), 1e-12);
}

TEST(Haar, EmptyWindowIsDegenerate) {
  const Group z = make_group(IntegerWindowDesc{3, false});
  EXPECT_THROW(Window::from_points(z, {}), Error);
}

TEST(Characters, FullFiniteDual) {
  const Group g = make_group(FiniteProductDesc{{4}});
  const auto chars = characters(g, 7);
  ASSERT_EQ(chars.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(chars[k].theta[0], static_cast<double>(k));
}

TEST(Characters, IntegerWindowSamplesCircle) {
  const Group g = make_group(IntegerWindowDesc{10, false});
  const auto chars = characters(g, 360);
  ASSERT_EQ(chars.size(), 360u);
  EXPECT_NEAR(chars[90].theta[0], std::numbers::pi / 2.0, 1e-15);
}

TEST(Characters, RealGridSpansNyquistBand) {
  const Group g = make_group(RealGridDesc{5.0, 0.5, false});
  const auto chars = characters(g, 100);
  ASSERT_EQ(chars.size(), 100u);
  EXPECT_NEAR(chars.front().theta[0], -2.0 * std::numbers::pi, 1e-12);
  EXPECT_NEAR(chars.back().theta[0], 2.0 * std::numbers::pi, 1e-12);
}

TEST(Characters, UnimodularAndMultiplicative) {
  const Group g = make_group(FiniteProductDesc{{6, 4}});
  for (const auto& c : characters(g)) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Element x = g.element(i);
      EXPECT_NEAR(std::abs(pairing(g, x, c)), 1.0, 1e-15);
      for (std::size_t j = 0; j < g.size(); j += 5) {
        const Element y = g.element(j);
        const Complex lhs = pairing(g, *g.add(x, y), c);
        EXPECT_LT(std::abs(lhs - pairing(g, x, c) * pairing(g, y, c)), 1e-12);
      }
    }
  }
}

TEST(Lambda, GridPointsGrowOffTheCone) {
  const Group g = make_group(IntegerWindowDesc{10, true});
  const auto pts = lambda_grid(g, {std::log(2.0)}, 4);
  ASSERT_EQ(pts.size(), 4u);
  for (const auto& p : pts) {
    EXPECT_NEAR(std::abs(pairing(g, {1}, p)), 2.0, 1e-14);
    for (Coord x = 1; x <= 10; ++x) EXPECT_GT(std::abs(pairing(g, {x}, p)), 1.0);
  }
}

TEST(Lambda, RealConeProductCount) {
  const Group g = make_group(RealGridDesc{4.0, 0.5, true});
  EXPECT_EQ(lambda_grid(g, {1.0, 0.5}, 10).size(), 20u);
}

TEST(Lambda, RejectsBoundaryAndUnorderedGroups) {
  const Group cone = make_group(IntegerWindowDesc{10, true});
  EXPECT_THROW(lambda_grid(cone, {0.0}, 4), Error);
  const Group z4 = make_group(FiniteProductDesc{{4}});
  try {
    lambda_grid(z4, {1.0}, 4);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "Λ undefined: group not ordered");
  }
}
