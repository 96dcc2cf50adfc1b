/// \file
/// Laplace transforms on the cones Z+ and R+ (the z-transform outside the unit
/// disc and the classical transform on the right half-plane), the decay
/// estimate that makes them converge on J^1, the convolution identity, and the
/// path lambda_n -> gamma approaching the dual group from inside Lambda.

#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <set>
#include <span>
#include <vector>

#include "lcanorm/function_spaces.hpp"
#include "lcanorm/group.hpp"
#include "lcanorm/measure.hpp"

namespace lcanorm {

namespace detail {

inline void check_lambda(const Group& g, const SpectralPoint& lambda) {
  if (!g.cone_only()) throw Error("Laplace transform needs a cone group");
  if (!(lambda.alpha > 0.0)) throw Error("not in Λ");
}

// sum over the cone of v(x) <-x, s> h, with s a character or a Lambda point.
inline Complex cone_transform(const GridFunction& f, const SpectralPoint& s) {
  const Group& g = f.group();
  Complex acc{};
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (f[i] != Complex{}) acc += f[i] * pairing_negative(g, g.element(i), s);
  }
  return acc * g.weight();
}

inline Complex measure_transform(const Measure& mu, const SpectralPoint& s) {
  const Group& g = mu.group();
  Complex acc{};
  for (const auto& a : mu.atoms()) acc += a.weight * pairing_negative(g, g.element(a.index), s);
  if (mu.has_density()) acc += cone_transform(*mu.density(), s);
  return acc;
}

}  // namespace detail

/// f^(lambda) = sum_{x >= 0} f(x) <-x, lambda> h.
inline Complex laplace_function(const GridFunction& f, const SpectralPoint& lambda) {
  detail::check_lambda(f.group(), lambda);
  return detail::cone_transform(f, lambda);
}

/// mu^(lambda) = sum_atoms w <-y, lambda> + density part by quadrature.
inline Complex laplace_measure(const Measure& mu, const SpectralPoint& lambda) {
  detail::check_lambda(mu.group(), lambda);
  return detail::measure_transform(mu, lambda);
}

struct DecayBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds() const { return lhs <= rhs + 1e-10; }
};

namespace detail {

// y must be a positive grid position whose cells [0, y) all lie in K.
inline Coord decay_step_cells(const Group& g, const Window& K, double y) {
  if (!(y > 0.0)) throw Error("decay step y must be positive");
  const Coord cells = g.locate(y)[0];
  std::set<Coord> in_window;
  for (const auto& p : K.points()) in_window.insert(p[0]);
  for (Coord c = 0; c < cells; ++c) {
    if (!in_window.count(c)) throw Error("[0, y) is not contained in the window");
  }
  return cells;
}

}  // namespace detail

/// lhs = sum |f(x)| e^{-alpha x} h, rhs = ||f||_{J^1_K} / (1 - e^{-alpha y}).
/// Blocks [n y, (n + 1) y) tile the cone and each fits in a translate of K,
/// so lhs <= rhs.
inline DecayBound decay_bound_check(const GridFunction& f, const SpectralPoint& lambda, const Window& K, double y) {
  const Group& g = f.group();
  detail::check_lambda(g, lambda);
  detail::decay_step_cells(g, K, y);
  double lhs = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (f[i] != Complex{}) lhs += std::abs(f[i]) * std::exp(-lambda.alpha * g.position(i));
  }
  lhs *= g.weight();
  const double rhs = jp_norm(f, 1.0, K) / -std::expm1(-lambda.alpha * y);
  return {lhs, rhs};
}

/// Bound on the transform tail beyond the grid for any continuation of f whose
/// J^1_K norm does not exceed the in-grid value.
inline double laplace_tail_bound(const GridFunction& f, const SpectralPoint& lambda, const Window& K, double y) {
  const Group& g = f.group();
  detail::check_lambda(g, lambda);
  detail::decay_step_cells(g, K, y);
  const double end = static_cast<double>(g.hi() + 1) * g.step();
  return std::exp(-lambda.alpha * end) * jp_norm(f, 1.0, K) / -std::expm1(-lambda.alpha * y);
}

/// |L(f * mu)(lambda) - f^(lambda) mu^(lambda)|.
inline double convolution_identity_residual(const GridFunction& f, const Measure& mu, const SpectralPoint& lambda) {
  const GridFunction conv = convolve(f, mu);
  return std::abs(laplace_function(conv, lambda) - laplace_function(f, lambda) * laplace_measure(mu, lambda));
}

/// lambda_n with <x, lambda_n> = <x, gamma> e^{alpha_shape x / n}, n = 1..n_max.
struct BoundaryPath {
  SpectralPoint gamma;
  double alpha_shape = 1.0;
  std::vector<SpectralPoint> terms;
};

inline BoundaryPath boundary_path(const SpectralPoint& gamma, double alpha_shape, std::size_t n_max) {
  if (!gamma.is_character()) throw Error("boundary path must end at a character");
  if (!(alpha_shape > 0.0)) throw Error("alpha shape must be positive");
  if (n_max < 1) throw Error("n_max must be at least 1");
  BoundaryPath path{gamma, alpha_shape, {}};
  path.terms.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) path.terms.push_back({gamma.theta, alpha_shape / static_cast<double>(n)});
  return path;
}

struct BoundaryStep {
  std::size_t n = 0;
  double deviation = 0.0;
  /// max over supp mu of (1 - e^{-alpha x / n}) |mu|(G).
  double bound = 0.0;
};

/// deviation(n) = |mu^(lambda_n) - mu^(gamma)| along the path.
inline std::vector<BoundaryStep> boundary_sequence(const Measure& mu, const BoundaryPath& path) {
  const Group& g = mu.group();
  if (!g.cone_only()) throw Error("boundary sequence needs a cone group");
  const Complex at_gamma = detail::measure_transform(mu, path.gamma);
  const double tv = total_variation(mu);
  const auto supp = mu.support();
  const double reach = supp ? g.position(supp->second) : 0.0;
  std::vector<BoundaryStep> out;
  out.reserve(path.terms.size());
  for (std::size_t k = 0; k < path.terms.size(); ++k) {
    const auto& term = path.terms[k];
    const double dev = std::abs(laplace_measure(mu, term) - at_gamma);
    out.push_back({k + 1, dev, -std::expm1(-term.alpha * reach) * tv});
  }
  return out;
}

/// Index N past which deviation(n) < eps, for a finitely supported measure
/// with y the right end of its support (so no mass lies beyond y):
/// N = ceil(alpha y / -log(1 - eps / (2 |mu|([0, y])))).
inline std::size_t boundary_index(const Measure& mu, double alpha_shape, double eps) {
  if (!(eps > 0.0)) throw Error("eps must be positive");
  const double tv = total_variation(mu);
  if (tv == 0.0 || eps >= 2.0 * tv) return 1;
  const double y = mu.group().position(mu.support()->second);
  if (y == 0.0) return 1;
  const double q = alpha_shape * y / -std::log1p(-eps / (2.0 * tv));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(q)));
}

/// max |mu^(lambda)| over a grid of Lambda points.
inline double sup_lambda(const Measure& mu, std::span<const SpectralPoint> grid) {
  if (grid.empty()) throw Error("empty Λ grid");
  double best = 0.0;
  for (const auto& s : grid) best = std::max(best, std::abs(laplace_measure(mu, s)));
  return best;
}

}  // namespace lcanorm
