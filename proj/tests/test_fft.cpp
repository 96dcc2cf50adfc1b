#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lcanorm/fft.hpp"

using namespace lcanorm;

namespace {

std::vector<Complex> naive_dft(const std::vector<Complex>& a) {
  const std::size_t n = a.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t x = 0; x < n; ++x)
      out[k] += a[x] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((k * x) % n) / static_cast<double>(n));
  return out;
}

}  // namespace

TEST(Fft, MatchesNaiveDftForAllSmallLengths) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n = 1; n <= 70; ++n) {
    std::vector<Complex> a(n);
    for (auto& v : a) v = {u(rng), u(rng)};
    auto b = a;
    fft::transform(b);
    const auto ref = naive_dft(a);
    for (std::size_t k = 0; k < n; ++k) EXPECT_LT(std::abs(b[k] - ref[k]), 1e-11) << "n=" << n;
  }
}

TEST(Fft, InverseUndoesForward) {
  std::vector<Complex> a = {1.0, {2.0, -1.0}, 0.5, -3.0, {0.0, 4.0}};
  auto b = a;
  fft::transform(b);
  fft::transform(b, true);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_LT(std::abs(b[k] / 5.0 - a[k]), 1e-14);
}

TEST(Fft, CyclicConvolutionOnProductGroup) {
  const std::vector<Coord> orders = {3, 4};
  std::vector<Complex> a(12), b(12);
  for (std::size_t i = 0; i < 12; ++i) {
    a[i] = static_cast<double>(i) - 5.0;
    b[i] = Complex(std::sin(static_cast<double>(i)), 0.25 * static_cast<double>(i % 3));
  }
  const auto c = fft::cyclic_convolve(a, b, orders);
  for (Coord x0 = 0; x0 < 3; ++x0)
    for (Coord x1 = 0; x1 < 4; ++x1) {
      Complex ref{};
      for (Coord y0 = 0; y0 < 3; ++y0)
        for (Coord y1 = 0; y1 < 4; ++y1) {
          const auto d0 = ((x0 - y0) % 3 + 3) % 3, d1 = ((x1 - y1) % 4 + 4) % 4;
          ref += a[static_cast<std::size_t>(d0 * 4 + d1)] * b[static_cast<std::size_t>(y0 * 4 + y1)];
        }
      EXPECT_LT(std::abs(c[static_cast<std::size_t>(x0 * 4 + x1)] - ref), 1e-12);
    }
}
