/// \file
/// L^p and windowed J^p_K norms on grid functions, the covering constant that
/// makes any two windows give equivalent J^p norms, and the separated family
/// witnessing nonseparability on non-compact groups.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lcanorm/group.hpp"
#include "lcanorm/measure.hpp"

namespace lcanorm {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class NormFamily { Lp, Jp };

/// Which norm a grid function is measured in. Jp requires a window and
/// 1 <= p < inf; Lp additionally admits p = inf.
struct NormSpec {
  NormFamily family = NormFamily::Lp;
  double p = 2.0;
  std::optional<Window> window;

  static NormSpec lp(double p) {
    if (!(p >= 1.0)) throw Error("p must be at least 1");
    return {NormFamily::Lp, p, std::nullopt};
  }
  static NormSpec jp(double p, Window K) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw Error("J^p needs 1 <= p < inf");
    return {NormFamily::Jp, p, std::move(K)};
  }

  std::string label() const {
    if (family == NormFamily::Lp) return "Lp";
    const auto lo = window->lower(), hi = window->upper();
    std::string s = "Jp[";
    for (std::size_t j = 0; j < lo.size(); ++j) s += (j ? ";" : "") + std::to_string(lo[j]) + ".." + std::to_string(hi[j]);
    return s + "|" + std::to_string(window->size()) + "]";
  }
};

namespace detail {

inline double power_of_abs(Complex v, double p) {
  if (p == 1.0) return std::abs(v);
  if (p == 2.0) return std::norm(v);
  return std::pow(std::abs(v), p);
}

inline double root(double s, double p) {
  if (p == 1.0) return s;
  if (p == 2.0) return std::sqrt(s);
  return std::pow(s, 1.0 / p);
}

}  // namespace detail

inline double lp_norm(const GridFunction& f, double p) {
  if (!(p >= 1.0)) throw Error("p must be at least 1");
  if (p == kInfinity) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  double s = 0.0;
  for (const auto& v : f.values()) s += detail::power_of_abs(v, p);
  return detail::root(s * f.group().weight(), p);
}

/// ||f||_K = max over translates x of (sum_{y in K} |f(x - y)|^p h)^{1/p}.
///
/// On window groups f is extended by zero off the grid and x ranges over every
/// point whose translate x - K meets the grid, so the value is exactly
/// invariant under admissible shifts.
inline double jp_norm(const GridFunction& f, double p, const Window& K) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error("J^p needs 1 <= p < inf");
  const Group& g = f.group();
  if (K.size() == 0) throw Error("degenerate window");
  std::vector<std::size_t> kidx;
  kidx.reserve(K.size());
  for (const auto& y : K.points()) kidx.push_back(g.index_or_throw(y));

  if (K.size() == 1) {
    double m = 0.0;
    for (const auto& v : f.values()) m = std::max(m, std::abs(v));
    return p == 1.0 ? m * g.weight() : m * detail::root(g.weight(), p);
  }

  double best = 0.0;
  if (g.is_cyclic_product()) {
    for (std::size_t x = 0; x < g.size(); ++x) {
      double s = 0.0;
      for (std::size_t y : kidx) s += detail::power_of_abs(f[g.cyclic_difference(x, y)], p);
      best = std::max(best, s);
    }
  } else {
    const Coord kmin = K.lower()[0], kmax = K.upper()[0];
    if (kmax - kmin > g.hi() - g.lo()) throw Error("window larger than domain");
    const auto n = static_cast<Coord>(g.size());
    for (Coord x = g.lo() + kmin; x <= g.hi() + kmax; ++x) {
      double s = 0.0;
      for (const auto& y : K.points()) {
        const Coord src = x - y[0] - g.lo();
        if (src >= 0 && src < n) s += detail::power_of_abs(f[static_cast<std::size_t>(src)], p);
      }
      best = std::max(best, s);
    }
  }
  return detail::root(best * g.weight(), p);
}

inline double norm(const GridFunction& f, const NormSpec& spec) {
  if (spec.family == NormFamily::Lp) return lp_norm(f, spec.p);
  if (!spec.window) throw Error("J^p norm needs a window");
  return jp_norm(f, spec.p, *spec.window);
}

struct CoveringConstant {
  std::size_t count = 0;
  double constant = 0.0;
  std::vector<Element> offsets;  // translates a_i with K' inside the union of V + a_i
};

/// Greedy left-to-right cover of K' by translates of V = K cap K', after both
/// windows are translated so their lower corners sit at the origin. For every
/// f, ||f||_{K'} <= n^{1/p} ||f||_K.
inline CoveringConstant covering_constant(const Window& K, const Window& Kprime, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error("J^p needs 1 <= p < inf");
  auto normalized = [](const Window& W) {
    const Element base = W.lower();
    std::set<Element> pts;
    for (auto e : W.points()) {
      for (std::size_t j = 0; j < e.size(); ++j) e[j] -= base[j];
      pts.insert(std::move(e));
    }
    return pts;
  };
  const auto k = normalized(K);
  const auto kp = normalized(Kprime);
  if (k.begin()->size() != kp.begin()->size()) throw Error("windows have different dimensions");
  std::vector<Element> v;
  std::set_intersection(k.begin(), k.end(), kp.begin(), kp.end(), std::back_inserter(v));
  if (v.empty()) throw Error("windows are disjoint after translation to a common base");

  const Element& anchor = v.front();
  std::set<Element> uncovered = kp;
  CoveringConstant out;
  while (!uncovered.empty()) {
    const Element a = *uncovered.begin();
    Element offset(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) offset[j] = a[j] - anchor[j];
    for (const auto& e : v) {
      Element t(e.size());
      for (std::size_t j = 0; j < e.size(); ++j) t[j] = e[j] + offset[j];
      uncovered.erase(t);
    }
    out.offsets.push_back(std::move(offset));
  }
  out.count = out.offsets.size();
  out.constant = detail::root(static_cast<double>(out.count), p);
  return out;
}

/// Binary functions constant on pairwise disjoint translates x_n - K of the
/// window; member i takes the value of bit n of i on block n. Any two members
/// differ on a full translate, so their J^p distance is at least m(K)^{1/p}.
inline std::vector<GridFunction> separated_family(const Group& g, const Window& K, std::size_t count) {
  if (g.is_compact()) throw Error("separated family needs a non-compact group");
  if (count == 0) throw Error("count must be positive");
  haar_measure(g, K);
  const Coord kmin = K.lower()[0], kmax = K.upper()[0];
  const Coord span = kmax - kmin + 1;
  const auto blocks = static_cast<Coord>(std::max<std::size_t>(1, std::bit_width(count - 1)));
  if (g.lo() + blocks * span - 1 > g.hi()) throw Error("domain too small for requested family");

  std::vector<GridFunction> family;
  family.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GridFunction f(g);
    for (Coord b = 0; b < blocks; ++b) {
      if (!((i >> b) & 1U)) continue;
      const Coord x = g.lo() + kmax + b * span;
      for (const auto& y : K.points()) f[g.index_or_throw({x - y[0]})] = 1.0;
    }
    family.push_back(std::move(f));
  }
  return family;
}

struct HolderChain {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds() const { return lhs <= rhs + 1e-10; }
};

/// ||f||_{J^p} against m(K)^{1/p - 1/q} ||f||_{J^q} for p <= q.
inline HolderChain holder_chain_check(const GridFunction& f, const Window& K, double p, double q) {
  if (!(p >= 1.0) || !(q >= p)) throw Error("Hölder chain needs 1 <= p <= q");
  const double m = haar_measure(f.group(), K);
  return {jp_norm(f, p, K), std::pow(m, 1.0 / p - 1.0 / q) * jp_norm(f, q, K)};
}

}  // namespace lcanorm
