/// \file
/// Norms of the convolution operator T_mu f = f * mu: exact induced norms on
/// finite groups, the Fourier-Stieltjes and Laplace lower bounds, the total
/// variation upper bound, a multistart coordinate-ascent lower estimate, and
/// the report that checks all of them against each other.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "lcanorm/function_spaces.hpp"
#include "lcanorm/group.hpp"
#include "lcanorm/laplace.hpp"
#include "lcanorm/measure.hpp"

namespace lcanorm {

/// Dense matrix of T_mu on a finite group: (A f)(x) = sum_z k(x - z) f(z).
inline std::vector<Complex> circulant_matrix(const Measure& mu) {
  const Group& g = mu.group();
  if (!g.is_cyclic_product()) throw Error("exact norm requires finite group");
  const auto k = mu.kernel();
  const std::size_t n = g.size();
  std::vector<Complex> a(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t z = 0; z < n; ++z) a[x * n + z] = k[g.cyclic_difference(x, z)];
  return a;
}

namespace detail {

inline std::vector<Complex> multiply(const std::vector<Complex>& x, const std::vector<Complex>& y, std::size_t n) {
  std::vector<Complex> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex xik = x[i * n + k];
      if (xik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += xik * y[k * n + j];
    }
  return out;
}

inline double frobenius(const std::vector<Complex>& m) {
  double s = 0.0;
  for (const auto& v : m) s += std::norm(v);
  return std::sqrt(s);
}

inline constexpr std::size_t kSquaringLimit = 512;
inline constexpr int kSquarings = 30;

// Largest singular value of a dense n x n matrix by power iteration on B = A* A.
// For n <= kSquaringLimit the start vector is first pushed through B^(2^30)
// by repeated squaring, so near-tied top eigenvalues cannot stall the
// relative-change stopping rule.
inline double spectral_norm(const std::vector<Complex>& a, std::size_t n) {
  std::vector<Complex> b(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aki = std::conj(a[k * n + i]);
      if (aki == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) b[i * n + j] += aki * a[k * n + j];
    }

  std::vector<Complex> v(n), u(n);
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  for (auto& x : v) {
    const double r = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x = 1.0 + 0.1 * (2.0 * r - 1.0);
  }
  auto apply = [&](const std::vector<Complex>& m, const std::vector<Complex>& in, std::vector<Complex>& out) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex s{};
      for (std::size_t j = 0; j < n; ++j) s += m[i * n + j] * in[j];
      out[i] = s;
    }
  };
  auto normalize = [&](std::vector<Complex>& x) {
    double s = 0.0;
    for (const auto& c : x) s += std::norm(c);
    s = std::sqrt(s);
    if (s > 0.0)
      for (auto& c : x) c /= s;
    return s;
  };
  normalize(v);

  if (n <= kSquaringLimit) {
    std::vector<Complex> m = b;
    for (int s = 0; s < kSquarings; ++s) {
      const double f = frobenius(m);
      if (f == 0.0) return 0.0;
      for (auto& c : m) c /= f;
      m = multiply(m, m, n);
    }
    apply(m, v, u);
    if (normalize(u) > 0.0) v = u;
  }

  double rho = 0.0;
  for (int iter = 0; iter < 10000; ++iter) {
    apply(b, v, u);
    double next = 0.0;
    for (std::size_t i = 0; i < n; ++i) next += (std::conj(v[i]) * u[i]).real();
    if (normalize(u) == 0.0) return 0.0;
    v.swap(u);
    const bool converged = std::abs(next - rho) < 1e-12 * next;
    rho = next;
    if (converged) break;
  }
  return std::sqrt(std::max(rho, 0.0));
}

}  // namespace detail

/// Induced p-norm of T_mu on L^p of a finite group for p in {1, 2, inf}:
/// max column sum, largest singular value, max row sum.
inline double opnorm_exact_finite(const Measure& mu, double p) {
  const Group& g = mu.group();
  if (!g.is_cyclic_product()) throw Error("exact norm requires finite group");
  if (p != 1.0 && p != 2.0 && p != kInfinity) throw Error("exact norm available for p in {1, 2, inf} only");
  if (mu.is_zero()) return 0.0;
  const std::size_t n = g.size();
  const auto a = circulant_matrix(mu);
  if (p == 2.0) return detail::spectral_norm(a, n);
  double best = 0.0;
  for (std::size_t outer = 0; outer < n; ++outer) {
    double s = 0.0;
    for (std::size_t inner = 0; inner < n; ++inner) s += std::abs(p == 1.0 ? a[inner * n + outer] : a[outer * n + inner]);
    best = std::max(best, s);
  }
  return best;
}

/// Sampled sup over the dual group of |mu^|; bounds ||T_mu|| from below.
inline double lower_bound_fourier(const Measure& mu, std::size_t resolution = 1024) {
  if (mu.is_zero()) return 0.0;
  const auto chars = characters(mu.group(), resolution);
  return sup_fourier(mu, chars);
}

inline double upper_bound_tv(const Measure& mu) { return total_variation(mu); }

struct AscentOptions {
  std::size_t budget = 5000;
  std::uint64_t seed = 42;
  std::size_t starts = 16;
};

struct AscentResult {
  double best = 0.0;
  /// Best ratio after each objective evaluation; non-decreasing.
  std::vector<double> trace;
  std::size_t evaluations = 0;
};

/// Multistart coordinate ascent on ||f * mu|| / ||f||. Each start draws a
/// random sign pattern and then perturbs one grid value at a time over the
/// step schedule {1, 0.3, 0.1, 0.03, 0.01}, keeping improvements. Trial
/// functions are restricted so that f * mu stays on the grid. The result is a
/// lower estimate of ||T_mu||, never the norm itself.
inline AscentResult opnorm_ascent(const Measure& mu, const NormSpec& space, const AscentOptions& opts = {}) {
  if (opts.budget == 0) throw Error("iteration budget must be positive");
  if (opts.starts == 0) throw Error("at least one start is required");
  AscentResult result;
  if (mu.is_zero()) return result;

  const Group& g = mu.group();
  const auto kernel = mu.kernel();
  const auto n = static_cast<Coord>(g.size());

  // Nonzero kernel entries as (offset coordinate, weight).
  struct Tap {
    std::size_t index;
    Coord coord;
    Complex weight;
  };
  std::vector<Tap> taps;
  for (std::size_t j = 0; j < kernel.size(); ++j) {
    if (kernel[j] == Complex{}) continue;
    const std::size_t neg = g.is_cyclic_product() ? *g.index_of(g.negate(g.element(j))) : 0;
    taps.push_back({neg, g.is_cyclic_product() ? 0 : g.lo() + static_cast<Coord>(j), kernel[j]});
  }

  std::vector<std::size_t> domain;
  if (g.is_cyclic_product()) {
    for (std::size_t i = 0; i < g.size(); ++i) domain.push_back(i);
  } else {
    const auto supp = mu.support();
    const Coord first = -(g.lo() + static_cast<Coord>(supp->first));
    const Coord last = n - 1 - (g.lo() + static_cast<Coord>(supp->second));
    for (Coord i = std::max<Coord>(first, 0); i <= std::min(last, n - 1); ++i) domain.push_back(static_cast<std::size_t>(i));
    if (domain.empty()) throw Error("support overflow");
  }

  // Apply f_i += delta to the running convolution c = f * mu.
  auto update = [&](std::span<Complex> c, std::size_t i, Complex delta) {
    for (const auto& t : taps) {
      const std::size_t x = g.is_cyclic_product() ? g.cyclic_difference(i, t.index)
                                                  : static_cast<std::size_t>(static_cast<Coord>(i) + t.coord);
      c[x] += delta * t.weight;
    }
  };

  std::vector<Complex> directions = {1.0, -1.0};
  if (mu.is_complex()) {
    directions.push_back(Complex(0.0, 1.0));
    directions.push_back(Complex(0.0, -1.0));
  }
  const double schedule[] = {1.0, 0.3, 0.1, 0.03, 0.01};
  std::mt19937_64 rng(opts.seed);

  GridFunction f(g), c(g);
  auto ratio = [&]() {
    const double denom = norm(f, space);
    return denom > 0.0 ? norm(c, space) / denom : 0.0;
  };
  auto record = [&](double r) {
    ++result.evaluations;
    result.best = std::max(result.best, r);
    result.trace.push_back(result.best);
  };
  // The running convolution drifts under long chains of +-delta updates; an
  // apparent improvement is re-judged against a freshly computed f * mu.
  auto rebuild = [&]() {
    std::fill(c.values().begin(), c.values().end(), Complex{});
    for (std::size_t i : domain) {
      if (f[i] != Complex{}) update(c.values(), i, f[i]);
    }
  };

  for (std::size_t start = 0; start < opts.starts && result.evaluations < opts.budget; ++start) {
    const std::size_t left = opts.budget - result.evaluations;
    const std::size_t limit = result.evaluations + std::max<std::size_t>(1, left / (opts.starts - start));

    std::fill(f.values().begin(), f.values().end(), Complex{});
    for (std::size_t i : domain) f[i] = (rng() >> 63) ? 1.0 : -1.0;
    rebuild();
    double current = ratio();
    record(current);

    for (double step : schedule) {
      bool improved = true;
      while (improved && result.evaluations < limit) {
        improved = false;
        for (std::size_t i : domain) {
          for (const Complex& dir : directions) {
            if (result.evaluations >= limit) break;
            const Complex delta = step * dir;
            f[i] += delta;
            update(c.values(), i, delta);
            double r = ratio();
            if (r > current) {
              rebuild();
              r = ratio();
            }
            record(r > current ? r : current);
            if (r > current) {
              current = r;
              improved = true;
              break;
            }
            f[i] -= delta;
            update(c.values(), i, -delta);
          }
        }
      }
      rebuild();
    }
  }
  return result;
}

inline double opnorm_estimate_jp(const Measure& mu, double p, const Window& K, std::size_t budget = 5000,
                                 std::uint64_t seed = 42) {
  return opnorm_ascent(mu, NormSpec::jp(p, K), {budget, seed, 16}).best;
}

/// max over trial f of |<T_mu f, e_lambda> - mu^(lambda) <f, e_lambda>| with
/// <f, e_lambda> = f^(lambda): mu^(lambda) is an eigenvalue of the adjoint.
inline double eigenfunctional_check(const Measure& mu, const SpectralPoint& lambda,
                                    std::span<const GridFunction> trial_fs) {
  const Complex eigen = laplace_measure(mu, lambda);
  double worst = 0.0;
  for (const auto& f : trial_fs) {
    const Complex lhs = laplace_function(convolve(f, mu), lambda);
    worst = std::max(worst, std::abs(lhs - eigen * laplace_function(f, lambda)));
  }
  return worst;
}

/// When the space is an L^p in disguise on a finite group and p is one of
/// 1, 2, inf, the exponent whose exact induced norm applies.
inline std::optional<double> exact_exponent(const Group& g, const NormSpec& space) {
  if (!g.is_cyclic_product()) return std::nullopt;
  auto admissible = [](double p) -> std::optional<double> {
    if (p == 1.0 || p == 2.0 || p == kInfinity) return p;
    return std::nullopt;
  };
  if (space.family == NormFamily::Lp) return admissible(space.p);
  if (space.window->size() == 1) return kInfinity;
  if (space.window->size() == g.size()) return admissible(space.p);
  return std::nullopt;
}

struct SandwichOptions {
  std::size_t resolution = 1024;
  std::vector<double> alphas = {1.0, 0.1, 0.01};
  AscentOptions ascent;
};

struct SandwichReport {
  std::string group;
  std::string space;
  double p = 0.0;
  double fourier_lb = 0.0;
  std::optional<double> lambda_lb;
  double ascent_estimate = 0.0;
  double tv_ub = 0.0;
  std::optional<double> exact_value;
  bool consistent = false;

  /// The exact norm when known, otherwise the largest certified lower bound.
  double best_known() const {
    if (exact_value) return *exact_value;
    return std::max({fourier_lb, lambda_lb.value_or(0.0), ascent_estimate});
  }
};

inline constexpr double kSandwichTolerance = 1e-9;

inline bool sandwich_consistent(const SandwichReport& r) {
  const double tol = kSandwichTolerance;
  bool ok = r.fourier_lb <= r.tv_ub + tol && r.ascent_estimate <= r.tv_ub + tol;
  if (r.lambda_lb) ok = ok && *r.lambda_lb <= r.tv_ub + tol;
  if (r.exact_value) {
    ok = ok && r.fourier_lb <= *r.exact_value + tol && *r.exact_value <= r.tv_ub + tol &&
         r.ascent_estimate <= *r.exact_value + tol;
  }
  return ok;
}

/// Fourier lower bound, Lambda lower bound (cone groups), ascent estimate,
/// total variation upper bound and, where available, the exact norm.
inline SandwichReport sandwich(const Measure& mu, const NormSpec& space, const SandwichOptions& opts = {}) {
  const Group& g = mu.group();
  SandwichReport r;
  r.group = g.label();
  r.space = space.label();
  r.p = space.p;
  r.tv_ub = upper_bound_tv(mu);
  if (const auto e = exact_exponent(g, space)) r.exact_value = opnorm_exact_finite(mu, *e);
  if (mu.is_zero()) {
    if (g.cone_only()) r.lambda_lb = 0.0;
    r.consistent = sandwich_consistent(r);
    return r;
  }
  r.fourier_lb = lower_bound_fourier(mu, opts.resolution);
  if (g.cone_only()) r.lambda_lb = sup_lambda(mu, lambda_grid(g, opts.alphas, opts.resolution));
  r.ascent_estimate = opnorm_ascent(mu, space, opts.ascent).best;
  r.consistent = sandwich_consistent(r);
  return r;
}

}  // namespace lcanorm
