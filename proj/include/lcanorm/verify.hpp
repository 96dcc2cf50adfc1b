/// \file
/// Randomized property suite. Every check draws self-contained JSON instances
/// from a seeded generator and judges them from the JSON alone, so a failing
/// instance written out with its "check" name replays to the same verdict.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcanorm/function_spaces.hpp"
#include "lcanorm/group.hpp"
#include "lcanorm/laplace.hpp"
#include "lcanorm/measure.hpp"
#include "lcanorm/opnorm.hpp"
#include "lcanorm/problem.hpp"

namespace lcanorm::verify {

using nlohmann::json;

struct VerifyOptions {
  std::uint64_t seed = 42;
  /// Finest RealGrid step used by the quadrature refinement checks.
  double step = 0.01;
  /// Negative control: shrink the total variation bound by 1% in sandwich checks.
  bool inject_fault = false;
  std::size_t instances = 20;
  std::size_t budget = 2000;
};

struct Verdict {
  bool passed = false;
  std::string detail;
};

struct Check {
  std::string name;
  std::function<std::vector<json>(std::mt19937_64&, const VerifyOptions&)> generate;
  std::function<Verdict(const json&)> evaluate;
};

struct Failure {
  std::string check;
  json instance;  // includes "check"; feed back to replay()
  std::string detail;
};

struct CheckSummary {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
};

struct SuiteResult {
  std::vector<CheckSummary> checks;
  std::vector<Failure> failures;
  bool ok() const { return failures.empty(); }
};

namespace detail {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }
inline Coord pick(Rng& rng, Coord a, Coord b) { return std::uniform_int_distribution<Coord>(a, b)(rng); }
inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

inline Group group_of(const json& j) { return io::parse_group(j.at("group")); }
inline json group_json(const Group& g) { return io::to_json(g.descriptor()); }

inline Group random_finite(Rng& rng, Coord max_order = 12) {
  FiniteProductDesc d;
  const int factors = coin(rng) ? 1 : 2;
  for (int k = 0; k < factors; ++k) d.orders.push_back(pick(rng, 2, factors == 1 ? max_order : 6));
  return make_group(d);
}

inline Group random_window_group(Rng& rng, bool cone) {
  if (coin(rng)) return make_group(IntegerWindowDesc{pick(rng, 8, 20), cone});
  const double steps[] = {0.25, 0.125, 0.1, 0.05};
  const double h = steps[pick(rng, 0, 3)];
  return make_group(RealGridDesc{h * static_cast<double>(pick(rng, 8, 20)), h, cone});
}

inline Group random_group(Rng& rng) {
  switch (pick(rng, 0, 2)) {
    case 0: return random_finite(rng);
    case 1: return random_window_group(rng, false);
    default: return random_window_group(rng, true);
  }
}

/// Random values on grid indices [first, last]; complex when asked.
inline GridFunction random_function(const Group& g, Rng& rng, std::size_t first, std::size_t last, bool complex) {
  GridFunction f(g);
  for (std::size_t i = first; i <= last && i < g.size(); ++i) {
    f[i] = Complex(uniform(rng, -1.0, 1.0), complex ? uniform(rng, -1.0, 1.0) : 0.0);
  }
  return f;
}

inline GridFunction random_function(const Group& g, Rng& rng, bool complex = false) {
  return random_function(g, rng, 0, g.size() - 1, complex);
}

/// Window of `cells` consecutive grid cells (a box on finite products).
inline Window random_window(const Group& g, Rng& rng, Coord max_cells) {
  if (g.is_cyclic_product()) {
    Element hi(g.dim());
    for (std::size_t j = 0; j < g.dim(); ++j) hi[j] = pick(rng, 0, g.orders()[j] - 1);
    return Window::box(g, Element(g.dim(), 0), hi);
  }
  const Coord span = g.hi() - g.lo() + 1;
  const Coord cells = pick(rng, 1, std::max<Coord>(1, std::min(max_cells, span / 2)));
  const Coord start = pick(rng, g.lo(), g.hi() - cells + 1);
  return Window::box(g, {start}, {start + cells - 1});
}

/// Atoms at random grid indices in [first, last].
inline Measure random_atoms(const Group& g, Rng& rng, std::size_t first, std::size_t last, int count, bool complex) {
  Measure mu(g);
  for (int k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(pick(rng, static_cast<Coord>(first), static_cast<Coord>(last)));
    mu.add_atom(g.element(i), Complex(uniform(rng, -1.0, 1.0), complex ? uniform(rng, -1.0, 1.0) : 0.0));
  }
  return mu;
}

inline double random_exponent(Rng& rng, bool allow_inf) {
  const double ps[] = {1.0, 1.5, 2.0, 3.0, kInfinity};
  return ps[pick(rng, 0, allow_inf ? 4 : 3)];
}

inline NormSpec random_space(const Group& g, Rng& rng) {
  if (coin(rng)) return NormSpec::lp(random_exponent(rng, true));
  return NormSpec::jp(random_exponent(rng, false), random_window(g, rng, 6));
}

inline json spectral_json(const SpectralPoint& s) { return {{"alpha", s.alpha}, {"theta", s.theta}}; }
inline SpectralPoint spectral_of(const Group& g, const json& j) { return io::parse_spectral(g, j); }

inline Verdict pass(std::string detail = {}) { return {true, std::move(detail)}; }
inline Verdict fail(std::string detail) { return {false, std::move(detail)}; }

inline std::string num(double v) { return io::format_number(v); }

inline bool close(double a, double b, double rel, double abs_tol = 0.0) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)}) + abs_tol;
}

inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Closed form of the integral over [0, T] of sin^2(pi x / T) e^{-s x}.
inline Complex sin2_bump_transform(double T, Complex s) {
  const double w = 2.0 * std::numbers::pi / T;
  return (1.0 - std::exp(-s * T)) / 2.0 * (1.0 / s - s / (s * s + w * w));
}

// ---------------------------------------------------------------------------
// Individual checks. Each generator returns instances; each evaluator reads one.

inline std::vector<Check> make_checks() {
  std::vector<Check> checks;

  checks.push_back(
      {"norm_axioms",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = random_group(rng);
           const NormSpec s = random_space(g, rng);
           out.push_back({{"group", group_json(g)},
                          {"space", io::space_to_json(g, s)},
                          {"f", io::function_to_json(random_function(g, rng, true))},
                          {"g", io::function_to_json(random_function(g, rng, true))},
                          {"a", {{"re", uniform(rng, -3, 3)}, {"im", uniform(rng, -3, 3)}}}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const NormSpec s = io::parse_space(g, j.at("space"));
         const GridFunction f = io::parse_function(g, j.at("f")), h = io::parse_function(g, j.at("g"));
         const Complex a = io::parse_complex(j.at("a"));
         GridFunction af = f, sum = f;
         af *= a;
         sum += h;
         const double nf = norm(f, s), nh = norm(h, s);
         const double scale = std::max(1.0, std::abs(a) * nf + nh);
         if (!close(norm(af, s), std::abs(a) * nf, 1e-12)) return fail("homogeneity: " + num(norm(af, s)) + " vs " + num(std::abs(a) * nf));
         if (norm(sum, s) > nf + nh + 1e-12 * scale) return fail("triangle: " + num(norm(sum, s)) + " > " + num(nf + nh));
         return pass();
       }});

  checks.push_back(
      {"lattice_monotonicity",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = random_group(rng);
           const NormSpec s = random_space(g, rng);
           const GridFunction f = random_function(g, rng, true);
           GridFunction h = f;
           for (auto& v : h.values()) v *= 1.0 + uniform(rng, 0.0, 1.0) * (coin(rng) ? 1.0 : 0.0);
           out.push_back({{"group", group_json(g)},
                          {"space", io::space_to_json(g, s)},
                          {"f", io::function_to_json(f)},
                          {"g", io::function_to_json(h)}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const NormSpec s = io::parse_space(g, j.at("space"));
         const GridFunction f = io::parse_function(g, j.at("f")), h = io::parse_function(g, j.at("g"));
         for (std::size_t i = 0; i < g.size(); ++i) {
           if (std::abs(f[i]) > std::abs(h[i])) return pass("instance is not ordered pointwise; vacuous");
         }
         if (norm(f, s) > norm(h, s)) return fail(num(norm(f, s)) + " > " + num(norm(h, s)));
         return pass();
       }});

  checks.push_back(
      {"shift_invariance",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = coin(rng) ? random_finite(rng) : random_window_group(rng, coin(rng));
           const double p = random_exponent(rng, false);
           const Window K = random_window(g, rng, 5);
           GridFunction f(g);
           Element y;
           if (g.is_cyclic_product()) {
             f = random_function(g, rng, true);
             y = g.element(static_cast<std::size_t>(pick(rng, 0, static_cast<Coord>(g.size()) - 1)));
           } else {
             const auto n = static_cast<Coord>(g.size());
             const Coord a = pick(rng, 0, n / 2), b = pick(rng, a, n - 1);
             f = random_function(g, rng, static_cast<std::size_t>(a), static_cast<std::size_t>(b), true);
             y = {pick(rng, -a, n - 1 - b)};
           }
           out.push_back({{"group", group_json(g)},
                          {"space", io::space_to_json(g, NormSpec::jp(p, K))},
                          {"f", io::function_to_json(f)},
                          {"shift", y}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const NormSpec s = io::parse_space(g, j.at("space"));
         const GridFunction f = io::parse_function(g, j.at("f"));
         const auto y = j.at("shift").get<Element>();
         const double a = norm(f, s), b = norm(shift(f, y), s);
         if (a != b) return fail("J^p changed under shift: " + num(a) + " vs " + num(b));
         return pass();
       }});

  checks.push_back(
      {"collapse",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const bool compact = coin(rng);
           const Group g = compact ? random_finite(rng) : make_group(IntegerWindowDesc{pick(rng, 5, 20), coin(rng)});
           const double p = random_exponent(rng, false);
           const Window K = compact ? Window::whole(g) : Window::point(g, g.element(0));
           out.push_back({{"group", group_json(g)},
                          {"space", io::space_to_json(g, NormSpec::jp(p, K))},
                          {"f", io::function_to_json(random_function(g, rng, true))}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const NormSpec s = io::parse_space(g, j.at("space"));
         const GridFunction f = io::parse_function(g, j.at("f"));
         const double jp = norm(f, s);
         if (g.is_compact()) {
           if (s.window->size() != g.size()) return fail("window is not the whole group");
           const double lp = lp_norm(f, s.p);
           if (!close(jp, lp, 1e-12)) return fail("J^p " + num(jp) + " vs L^p " + num(lp));
           return pass();
         }
         const double sup = lp_norm(f, kInfinity);
         if (jp != sup) return fail("J^p with a singleton " + num(jp) + " vs sup " + num(sup));
         return pass();
       }});

  checks.push_back(
      {"covering_soundness",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = random_window_group(rng, coin(rng));
           const Window K = random_window(g, rng, 6), Kp = random_window(g, rng, 8);
           out.push_back({{"group", group_json(g)},
                          {"p", random_exponent(rng, false)},
                          {"K", io::window_to_json(g, K)},
                          {"K2", io::window_to_json(g, Kp)},
                          {"f", io::function_to_json(random_function(g, rng, true))}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const double p = j.at("p").get<double>();
         const Window K = io::parse_window(g, j.at("K")), Kp = io::parse_window(g, j.at("K2"));
         const GridFunction f = io::parse_function(g, j.at("f"));
         const auto c = covering_constant(K, Kp, p);
         const double lhs = jp_norm(f, p, Kp), rhs = c.constant * jp_norm(f, p, K);
         if (lhs > rhs + 1e-10) return fail(num(lhs) + " > " + num(rhs) + " with n = " + std::to_string(c.count));
         return pass();
       }});

  checks.push_back(
      {"holder_chain",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = random_group(rng);
           const double p = uniform(rng, 1.0, 3.0);
           out.push_back({{"group", group_json(g)},
                          {"p", p},
                          {"q", p + uniform(rng, 0.0, 3.0)},
                          {"K", io::window_to_json(g, random_window(g, rng, 6))},
                          {"f", io::function_to_json(random_function(g, rng, true))}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const auto r = holder_chain_check(io::parse_function(g, j.at("f")), io::parse_window(g, j.at("K")),
                                           j.at("p").get<double>(), j.at("q").get<double>());
         if (!r.holds()) return fail(num(r.lhs) + " > " + num(r.rhs));
         return pass();
       }});

  checks.push_back(
      {"separated_family",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < std::max<std::size_t>(1, o.instances / 4); ++k) {
           const Coord cells = pick(rng, 1, 6);
           const Coord count = pick(rng, 2, 16);
           const Coord blocks = std::max(1, static_cast<int>(std::bit_width(static_cast<std::size_t>(count - 1))));
           const Group g = make_group(IntegerWindowDesc{cells * blocks + pick(rng, 0, 5), coin(rng)});
           const Coord start = g.cone_only() ? 0 : pick(rng, -cells + 1, 0);
           out.push_back({{"group", group_json(g)},
                          {"p", random_exponent(rng, false)},
                          {"K", io::window_to_json(g, Window::box(g, {start}, {start + cells - 1}))},
                          {"count", count}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const double p = j.at("p").get<double>();
         const Window K = io::parse_window(g, j.at("K"));
         const auto family = separated_family(g, K, j.at("count").get<std::size_t>());
         const double floor = std::pow(haar_measure(g, K), 1.0 / p) - 1e-12;
         for (std::size_t a = 0; a < family.size(); ++a) {
           for (std::size_t b = a + 1; b < family.size(); ++b) {
             GridFunction d = family[a];
             d -= family[b];
             const double dist = jp_norm(d, p, K);
             if (dist < floor) return fail("members " + std::to_string(a) + ", " + std::to_string(b) + " at distance " + num(dist));
           }
         }
         return pass();
       }});

  checks.push_back(
      {"fourier_tv_bound",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = random_group(rng);
           Measure mu = random_atoms(g, rng, 0, g.size() - 1, static_cast<int>(pick(rng, 1, 5)), coin(rng));
           if (coin(rng)) mu.set_density(random_function(g, rng, coin(rng)));
           out.push_back({{"group", group_json(g)}, {"mu", io::measure_to_json(mu)}, {"resolution", 64}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const Measure mu = io::parse_measure(g, j.at("mu"));
         const double tv = total_variation(mu);
         for (const auto& c : characters(g, j.at("resolution").get<std::size_t>())) {
           const double v = std::abs(fourier_stieltjes(mu, c));
           if (v > tv + 1e-12 * std::max(1.0, tv)) return fail("|mu^| = " + num(v) + " exceeds TV " + num(tv));
         }
         return pass();
       }});

  checks.push_back(
      {"fft_direct",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = random_finite(rng, 96);
           Measure mu = random_atoms(g, rng, 0, g.size() - 1, 2, true);
           mu.set_density(random_function(g, rng, true));
           out.push_back({{"group", group_json(g)},
                          {"mu", io::measure_to_json(mu)},
                          {"f", io::function_to_json(random_function(g, rng, true))}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const Measure mu = io::parse_measure(g, j.at("mu"));
         const GridFunction f = io::parse_function(g, j.at("f"));
         const GridFunction a = convolve(f, mu, ConvolutionPath::Direct), b = convolve(f, mu, ConvolutionPath::Fft);
         const double scale = std::max(1e-300, lp_norm(a, kInfinity));
         const double err = max_abs_diff(a, b) / scale;
         if (err > 1e-10) return fail("relative difference " + num(err));
         return pass();
       }});

  checks.push_back(
      {"convolve_dirac_shift",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = random_group(rng);
           GridFunction f(g);
           Element y;
           if (g.is_cyclic_product()) {
             f = random_function(g, rng, true);
             y = g.element(static_cast<std::size_t>(pick(rng, 0, static_cast<Coord>(g.size()) - 1)));
           } else {
             const auto n = static_cast<Coord>(g.size());
             const Coord a = pick(rng, 0, n / 2), b = pick(rng, a, n - 1);
             f = random_function(g, rng, static_cast<std::size_t>(a), static_cast<std::size_t>(b), true);
             // y is an element of G: an index offset from the origin cell.
             const Coord lo_y = std::max<Coord>(-a, g.lo()), hi_y = std::min<Coord>(n - 1 - b, g.hi());
             if (lo_y > hi_y) continue;
             y = {pick(rng, lo_y, hi_y)};
           }
           out.push_back({{"group", group_json(g)}, {"f", io::function_to_json(f)}, {"y", y}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const GridFunction f = io::parse_function(g, j.at("f"));
         const auto y = j.at("y").get<Element>();
         if (!(convolve(f, dirac(g, y)) == shift(f, y))) return fail("convolution with a point mass differs from the shift");
         return pass();
       }});

  checks.push_back(
      {"linearity",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = random_group(rng);
           const std::size_t half = g.is_cyclic_product() ? g.size() - 1 : g.size() / 2;
           const std::size_t zero = g.is_cyclic_product() ? 0 : static_cast<std::size_t>(-g.lo());
           const Measure mu = random_atoms(g, rng, zero, std::min(g.size() - 1, zero + half / 2), 3, true);
           out.push_back({{"group", group_json(g)},
                          {"mu", io::measure_to_json(mu)},
                          {"f", io::function_to_json(random_function(g, rng, 0, half / 2, true))},
                          {"g", io::function_to_json(random_function(g, rng, 0, half / 2, true))},
                          {"a", {{"re", uniform(rng, -2, 2)}, {"im", uniform(rng, -2, 2)}}},
                          {"b", {{"re", uniform(rng, -2, 2)}, {"im", uniform(rng, -2, 2)}}}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const Measure mu = io::parse_measure(g, j.at("mu"));
         GridFunction f = io::parse_function(g, j.at("f")), h = io::parse_function(g, j.at("g"));
         const Complex a = io::parse_complex(j.at("a")), b = io::parse_complex(j.at("b"));
         GridFunction lhs_in = f, hb = h;
         lhs_in *= a;
         hb *= b;
         lhs_in += hb;
         GridFunction rhs = convolve(f, mu), rh = convolve(h, mu);
         rhs *= a;
         rh *= b;
         rhs += rh;
         const double err = max_abs_diff(convolve(lhs_in, mu), rhs);
         if (err > 1e-12 * std::max(1.0, lp_norm(rhs, kInfinity))) return fail("linearity error " + num(err));
         return pass();
       }});

  checks.push_back(
      {"decay_bound",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = random_window_group(rng, true);
           const Coord cells = pick(rng, 1, 5);
           const Window K = Window::box(g, {0}, {cells + pick(rng, 0, 3) - 1});
           const double y = static_cast<double>(pick(rng, 1, cells)) * g.step();
           out.push_back({{"group", group_json(g)},
                          {"f", io::function_to_json(random_function(g, rng, coin(rng)))},
                          {"K", io::window_to_json(g, K)},
                          {"y", y},
                          {"lambda", spectral_json({{uniform(rng, -3, 3)}, uniform(rng, 0.05, 2.0)})}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const auto r = decay_bound_check(io::parse_function(g, j.at("f")), spectral_of(g, j.at("lambda")),
                                          io::parse_window(g, j.at("K")), j.at("y").get<double>());
         if (!r.holds()) return fail(num(r.lhs) + " > " + num(r.rhs));
         return pass();
       }});

  checks.push_back(
      {"convolution_identity",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = make_group(IntegerWindowDesc{60, true});
           const Measure mu = random_atoms(g, rng, 0, 20, static_cast<int>(pick(rng, 1, 6)), coin(rng));
           out.push_back({{"group", group_json(g)},
                          {"mu", io::measure_to_json(mu)},
                          {"f", io::function_to_json(random_function(g, rng, 0, 19, coin(rng)))},
                          {"lambda", spectral_json({{uniform(rng, -3.2, 3.2)}, uniform(rng, 0.05, 2.0)})}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const double r = convolution_identity_residual(io::parse_function(g, j.at("f")), io::parse_measure(g, j.at("mu")),
                                                        spectral_of(g, j.at("lambda")));
         if (r > 1e-9) return fail("residual " + num(r));
         return pass();
       }});

  // The discrete identity is exact, so on R+ the refinement study compares
  // against the continuum transforms of sin^2 bumps: L(f * mu) at step h
  // against F(s) M(s), for h, h/2 and h/4 with the finest equal to the step.
  checks.push_back(
      {"laplace_quadrature",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < std::max<std::size_t>(1, o.instances / 4); ++k) {
           const double Ts[] = {1.0, 1.5, 2.0};
           out.push_back({{"steps", {4.0 * o.step, 2.0 * o.step, o.step}},
                          {"T_f", Ts[pick(rng, 0, 2)]},
                          {"T_mu", Ts[pick(rng, 0, 2)]},
                          {"density_scale", uniform(rng, 0.2, 1.5)},
                          {"atom_at", 0.5},
                          {"atom_weight", uniform(rng, -1.0, 1.0)},
                          {"lambda", spectral_json({{uniform(rng, -3, 3)}, uniform(rng, 0.2, 2.0)})}});
         }
         return out;
       },
       [](const json& j) {
         const auto steps = j.at("steps").get<std::vector<double>>();
         const double Tf = j.at("T_f").get<double>(), Tm = j.at("T_mu").get<double>();
         const double c = j.at("density_scale").get<double>(), a = j.at("atom_at").get<double>();
         const double w = j.at("atom_weight").get<double>();
         const json lam = j.at("lambda");
         const json& theta = lam.at("theta");
         const Complex s(lam.at("alpha").get<double>(), (theta.is_array() ? theta.at(0) : theta).get<double>());
         const double pi = std::numbers::pi;
         std::vector<double> residuals;
         std::string trail;
         for (double h : steps) {
           const double half = h * std::ceil((Tf + Tm + a + 1.0) / h);
           const Group g = make_group(RealGridDesc{half, h, true});
           const auto bump = [&](double T, double scale) {
             return GridFunction::tabulate(g, [=](double x) {
               return x < T ? scale * std::pow(std::sin(pi * x / T), 2) : 0.0;
             });
           };
           Measure mu(g);
           mu.set_density(bump(Tm, c));
           // The atom sits on the grid point nearest to atom_at; its transform is exact.
           const double at = std::round(a / h) * h;
           mu.add_atom(g.locate(at), w);
           const Complex exact = sin2_bump_transform(Tf, s) * (c * sin2_bump_transform(Tm, s) + w * std::exp(-s * at));
           const SpectralPoint lambda{{s.imag()}, s.real()};
           const GridFunction f = bump(Tf, 1.0);
           const double discrete = convolution_identity_residual(f, mu, lambda);
           if (discrete > 1e-9) return fail("discrete identity residual " + num(discrete) + " at h = " + num(h));
           residuals.push_back(std::abs(laplace_function(convolve(f, mu), lambda) - exact));
           trail += " r(" + num(h) + ")=" + num(residuals.back());
           if (residuals.back() > h) return fail("residual above h:" + trail);
         }
         for (std::size_t k = 1; k < residuals.size(); ++k) {
           const double ratio = steps[k] / steps[k - 1];
           if (residuals[k] > ratio * residuals[k - 1] + 1e-13) return fail("residual does not shrink linearly:" + trail);
         }
         return pass(trail);
       }});

  checks.push_back(
      {"tv_quadrature",
       [](Rng&, const VerifyOptions& o) {
         return std::vector<json>{{{"steps", {4.0 * o.step, 2.0 * o.step, o.step}}, {"halfwidth", 20.0}}};
       },
       [](const json& j) {
         const double L = j.at("halfwidth").get<double>();
         const double exact = -std::expm1(-L);
         double previous = kInfinity;
         std::string trail;
         for (double h : j.at("steps").get<std::vector<double>>()) {
           const Group g = make_group(RealGridDesc{L, h, true});
           Measure mu(g);
           mu.set_density(GridFunction::tabulate(g, [](double x) { return std::exp(-x); }));
           const double err = std::abs(total_variation(mu) - exact);
           trail += " e(" + num(h) + ")=" + num(err);
           if (err > h || err > previous) return fail("total variation quadrature:" + trail);
           previous = err;
         }
         return pass(trail);
       }});

  checks.push_back(
      {"boundary_sequence",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = random_window_group(rng, true);
           const int atoms = coin(rng) ? 1 : static_cast<int>(pick(rng, 2, 5));
           const Measure mu = random_atoms(g, rng, 0, g.size() - 1, atoms, coin(rng));
           out.push_back({{"group", group_json(g)},
                          {"mu", io::measure_to_json(mu)},
                          {"alpha_shape", uniform(rng, 0.1, 3.0)},
                          {"theta", uniform(rng, -3, 3)},
                          {"n_max", 60},
                          {"eps", std::pow(10.0, uniform(rng, -4, -1))}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const Measure mu = io::parse_measure(g, j.at("mu"));
         const double a = j.at("alpha_shape").get<double>(), eps = j.at("eps").get<double>();
         const SpectralPoint gamma{{j.at("theta").get<double>()}, 0.0};
         const auto path = boundary_path(gamma, a, j.at("n_max").get<std::size_t>());
         const auto seq = boundary_sequence(mu, path);
         const bool single = mu.atoms().size() == 1 && !mu.has_density();
         for (std::size_t k = 0; k < seq.size(); ++k) {
           if (seq[k].deviation > seq[k].bound + 1e-12) {
             return fail("n = " + std::to_string(seq[k].n) + ": " + num(seq[k].deviation) + " > " + num(seq[k].bound));
           }
           if (single && k > 0 && seq[k].deviation > seq[k - 1].deviation + 1e-15) {
             return fail("single-atom deviation increased at n = " + std::to_string(seq[k].n));
           }
         }
         const std::size_t N = boundary_index(mu, a, eps);
         const SpectralPoint at_N{gamma.theta, a / static_cast<double>(N)};
         Complex boundary{};
         for (const auto& atom : mu.atoms()) boundary += atom.weight * pairing_negative(g, g.element(atom.index), gamma);
         const double dev = std::abs(laplace_measure(mu, at_N) - boundary);
         if (!(dev < eps)) return fail("deviation at N = " + std::to_string(N) + " is " + num(dev) + " >= eps " + num(eps));
         return pass();
       }});

  checks.push_back(
      {"eigenfunctional",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = make_group(IntegerWindowDesc{50, true});
           json fs = json::array();
           for (int t = 0; t < 3; ++t) fs.push_back(io::function_to_json(random_function(g, rng, 0, 19, coin(rng))));
           out.push_back({{"group", group_json(g)},
                          {"mu", io::measure_to_json(random_atoms(g, rng, 0, 15, static_cast<int>(pick(rng, 1, 5)), coin(rng)))},
                          {"fs", fs},
                          {"lambda", spectral_json({{uniform(rng, -3.2, 3.2)}, uniform(rng, 0.05, 2.0)})}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         std::vector<GridFunction> fs;
         for (const auto& f : j.at("fs")) fs.push_back(io::parse_function(g, f));
         const double r = eigenfunctional_check(io::parse_measure(g, j.at("mu")), spectral_of(g, j.at("lambda")), fs);
         if (r > 1e-9) return fail("residual " + num(r));
         return pass();
       }});

  checks.push_back(
      {"sandwich_ordering",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = random_group(rng);
           const std::size_t zero = g.is_cyclic_product() ? 0 : static_cast<std::size_t>(-g.lo());
           const std::size_t reach = g.is_cyclic_product() ? g.size() - 1 : std::min(g.size() - 1, zero + 3);
           Measure mu = random_atoms(g, rng, zero, reach, static_cast<int>(pick(rng, 1, 4)), coin(rng));
           json inst = {{"group", group_json(g)},
                        {"mu", io::measure_to_json(mu)},
                        {"space", io::space_to_json(g, random_space(g, rng))},
                        {"resolution", 256},
                        {"budget", o.budget},
                        {"seed", rng() >> 12}};
           if (o.inject_fault) inst["inject_fault"] = true;
           out.push_back(std::move(inst));
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const Measure mu = io::parse_measure(g, j.at("mu"));
         SandwichOptions opts;
         opts.resolution = j.at("resolution").get<std::size_t>();
         opts.ascent.budget = j.at("budget").get<std::size_t>();
         opts.ascent.seed = j.at("seed").get<std::uint64_t>();
         SandwichReport r = sandwich(mu, io::parse_space(g, j.at("space")), opts);
         if (j.value("inject_fault", false)) {
           r.tv_ub *= 0.99;
           r.consistent = sandwich_consistent(r);
         }
         const double best = r.best_known();
         if (!r.consistent || r.fourier_lb > best + 1e-8 || best > r.tv_ub + 1e-8) {
           return fail("report " + io::report_to_json(r).dump());
         }
         return pass();
       }});

  checks.push_back(
      {"ascent_trace",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < std::max<std::size_t>(1, o.instances / 2); ++k) {
           const Group g = coin(rng) ? random_finite(rng) : make_group(IntegerWindowDesc{pick(rng, 6, 15), coin(rng)});
           const std::size_t zero = g.is_cyclic_product() ? 0 : static_cast<std::size_t>(-g.lo());
           const Measure mu = random_atoms(g, rng, zero, std::min(g.size() - 1, zero + 3), 3, coin(rng));
           out.push_back({{"group", group_json(g)},
                          {"mu", io::measure_to_json(mu)},
                          {"space", io::space_to_json(g, random_space(g, rng))},
                          {"budget", 1 + rng() % 1500},
                          {"seed", rng() >> 12}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const Measure mu = io::parse_measure(g, j.at("mu"));
         const auto res = opnorm_ascent(mu, io::parse_space(g, j.at("space")),
                                        {j.at("budget").get<std::size_t>(), j.at("seed").get<std::uint64_t>(), 16});
         for (std::size_t k = 1; k < res.trace.size(); ++k) {
           if (res.trace[k] < res.trace[k - 1]) return fail("best ratio decreased at evaluation " + std::to_string(k));
         }
         const double tv = total_variation(mu);
         if (res.best > tv + 1e-8) return fail("ascent " + num(res.best) + " exceeds TV " + num(tv));
         return pass();
       }});

  checks.push_back(
      {"lp_equalities",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = random_finite(rng, 64);
           out.push_back({{"group", group_json(g)},
                          {"mu", io::measure_to_json(random_atoms(g, rng, 0, g.size() - 1, static_cast<int>(pick(rng, 1, 8)), coin(rng)))}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const Measure mu = io::parse_measure(g, j.at("mu"));
         const double tv = total_variation(mu);
         const double n1 = opnorm_exact_finite(mu, 1.0), ninf = opnorm_exact_finite(mu, kInfinity);
         if (!close(n1, tv, 1e-10) || !close(ninf, tv, 1e-10)) return fail("L1 " + num(n1) + ", Linf " + num(ninf) + ", TV " + num(tv));
         const double n2 = opnorm_exact_finite(mu, 2.0);
         const double f = sup_fourier(mu, characters(g));
         if (std::abs(n2 - f) > 1e-8) return fail("L2 " + num(n2) + " vs sup |mu^| " + num(f));
         return pass();
       }});

  checks.push_back(
      {"shift_continuity",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < std::max<std::size_t>(1, o.instances / 2); ++k) {
           const double h = o.step;
           out.push_back({{"group", group_json(make_group(RealGridDesc{h * 800.0, h, false}))},
                          {"center", uniform(rng, -1.0, 1.0)},
                          {"width", uniform(rng, 0.3, 1.5)},
                          {"amplitude", uniform(rng, 0.5, 3.0)},
                          {"K", {{"from", -2.0}, {"to", 2.0}}}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const double c = j.at("center").get<double>(), w = j.at("width").get<double>(), A = j.at("amplitude").get<double>();
         const GridFunction f = GridFunction::tabulate(g, [=](double x) { return A * std::exp(-std::pow((x - c) / w, 2)); });
         const Window K = io::parse_window(g, j.at("K"));
         // Discrete modulus of continuity: integral over K of |f - S_y f| <= y * Var(f).
         double var = 0.0;
         for (std::size_t i = 1; i < f.size(); ++i) var += std::abs(f[i] - f[i - 1]);
         double previous = kInfinity;
         std::string trail;
         for (Coord k : {8, 4, 2, 1}) {
           const double d = local_shift_deviation(f, {k}, K);
           trail += " d(" + std::to_string(k) + "h)=" + num(d);
           if (!(d < previous)) return fail("not decreasing:" + trail);
           previous = d;
         }
         if (previous > g.step() * var * (1.0 + 1e-12)) return fail("d(h) above h * Var(f):" + trail);
         return pass(trail);
       }});

  checks.push_back(
      {"sup_lambda_vs_fourier",
       [](Rng& rng, const VerifyOptions& o) {
         std::vector<json> out;
         for (std::size_t k = 0; k < o.instances; ++k) {
           const Group g = make_group(IntegerWindowDesc{pick(rng, 5, 30), true});
           out.push_back({{"group", group_json(g)},
                          {"mu", io::measure_to_json(random_atoms(g, rng, 0, g.size() - 1, static_cast<int>(pick(rng, 1, 6)), coin(rng)))},
                          {"alpha", std::pow(10.0, uniform(rng, -4, -1))},
                          {"resolution", 256}});
         }
         return out;
       },
       [](const json& j) {
         const Group g = group_of(j);
         const Measure mu = io::parse_measure(g, j.at("mu"));
         const double alpha = j.at("alpha").get<double>();
         const auto res = j.at("resolution").get<std::size_t>();
         const double fourier = sup_fourier(mu, characters(g, res));
         const double lambda = sup_lambda(mu, lambda_grid(g, {alpha}, res));
         const double reach = g.position(mu.support()->second);
         const double slack = -std::expm1(-alpha * reach) * total_variation(mu);
         if (fourier > lambda + slack + 1e-12) return fail(num(fourier) + " > " + num(lambda) + " + " + num(slack));
         return pass();
       }});

  return checks;
}

}  // namespace detail

inline const std::vector<Check>& checks() {
  static const std::vector<Check> all = detail::make_checks();
  return all;
}

/// Judges one instance; Error exceptions count as failures.
inline Verdict evaluate(const Check& check, const json& instance) {
  try {
    return check.evaluate(instance);
  } catch (const std::exception& e) {
    return {false, std::string("error: ") + e.what()};
  }
}

/// Replays a serialized instance carrying its "check" name.
inline Verdict replay(const json& instance) {
  if (!instance.is_object() || !instance.contains("check")) throw io::SpecError("instance has no \"check\" field");
  const auto name = instance.at("check").get<std::string>();
  for (const auto& c : checks()) {
    if (c.name == name) return evaluate(c, instance);
  }
  throw io::SpecError("unknown check \"" + name + "\"");
}

/// Runs every check. Each check draws from its own generator seeded from the
/// suite seed and the check position, so adding instances to one check does
/// not perturb the others.
inline SuiteResult run_suite(const VerifyOptions& opts = {}) {
  SuiteResult out;
  const auto& all = checks();
  for (std::size_t c = 0; c < all.size(); ++c) {
    std::seed_seq seq{opts.seed, static_cast<std::uint64_t>(c)};
    detail::Rng rng(seq);
    CheckSummary summary{all[c].name, 0, 0};
    for (auto instance : all[c].generate(rng, opts)) {
      instance["check"] = all[c].name;
      const Verdict v = evaluate(all[c], instance);
      ++summary.total;
      if (v.passed) {
        ++summary.passed;
      } else {
        out.failures.push_back({all[c].name, std::move(instance), v.detail});
      }
    }
    out.checks.push_back(summary);
  }
  return out;
}

}  // namespace lcanorm::verify
