/// \file
/// Grid functions (elements of L^1_loc), complex measures as exact atoms plus
/// a density, total variation, convolution f * mu, shifts S_y and the
/// Fourier-Stieltjes transform.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "lcanorm/fft.hpp"
#include "lcanorm/group.hpp"

namespace lcanorm {

/// Complex values on the grid points of a Group, indexed like the group.
/// Window groups treat the function as zero outside the grid.
class GridFunction {
 public:
  explicit GridFunction(Group g) : group_(std::move(g)), values_(group_.size()) {}

  GridFunction(Group g, std::vector<Complex> values) : group_(std::move(g)), values_(std::move(values)) {
    if (values_.size() != group_.size()) throw Error("value count does not match the group size");
    for (const auto& v : values_) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw Error("grid function values must be finite");
    }
  }

  /// Samples fn at the real position of every grid point (one-dimensional groups).
  template <typename Fn>
  static GridFunction tabulate(const Group& g, Fn&& fn) {
    std::vector<Complex> values(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) values[i] = Complex(fn(g.position(i)));
    return GridFunction(g, std::move(values));
  }

  template <typename Fn>
  static GridFunction tabulate_elements(const Group& g, Fn&& fn) {
    std::vector<Complex> values(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) values[i] = Complex(fn(g.element(i)));
    return GridFunction(g, std::move(values));
  }

  static GridFunction indicator(const Group& g, const Window& K) {
    GridFunction f(g);
    for (const auto& p : K.points()) f.values_[g.index_or_throw(p)] = 1.0;
    return f;
  }

  const Group& group() const { return group_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

  Complex at(const Element& e) const {
    auto i = group_.index_of(e);
    return i ? values_[*i] : Complex{};
  }

  /// Inclusive index range [first, last] of the nonzero values, if any.
  std::optional<std::pair<std::size_t, std::size_t>> support() const {
    std::size_t first = values_.size(), last = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] != Complex{}) {
        first = std::min(first, i);
        last = i;
      }
    }
    if (first == values_.size()) return std::nullopt;
    return std::make_pair(first, last);
  }

  GridFunction& operator+=(const GridFunction& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  GridFunction& operator-=(const GridFunction& o) {
    check_same(o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  GridFunction& operator*=(Complex a) {
    for (auto& v : values_) v *= a;
    return *this;
  }
  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(Complex a, GridFunction f) { return f *= a; }

  GridFunction abs() const {
    GridFunction out(group_);
    for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = std::abs(values_[i]);
    return out;
  }

  bool operator==(const GridFunction& o) const { return group_ == o.group_ && values_ == o.values_; }

 private:
  void check_same(const GridFunction& o) const {
    if (!(group_ == o.group_)) throw Error("grid functions live on different groups");
  }

  Group group_;
  std::vector<Complex> values_;
};

struct Atom {
  std::size_t index;
  Complex weight;
};

/// A complex measure on the grid: exact point masses plus an optional density
/// integrated against the Haar weights. Atoms at the same point are merged.
class Measure {
 public:
  explicit Measure(Group g) : group_(std::move(g)) {}

  Measure(Group g, const std::vector<std::pair<Element, Complex>>& atoms,
          std::optional<GridFunction> density = std::nullopt)
      : group_(std::move(g)) {
    for (const auto& [at, w] : atoms) add_atom(at, w);
    if (density) set_density(std::move(*density));
  }

  Measure& add_atom(const Element& at, Complex weight) {
    if (!std::isfinite(weight.real()) || !std::isfinite(weight.imag())) throw Error("atom weight must be finite");
    const std::size_t index = group_.index_or_throw(at);
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), index,
                               [](const Atom& a, std::size_t i) { return a.index < i; });
    if (it != atoms_.end() && it->index == index) {
      it->weight += weight;
      if (it->weight == Complex{}) atoms_.erase(it);
    } else if (weight != Complex{}) {
      atoms_.insert(it, Atom{index, weight});
    }
    return *this;
  }

  Measure& add_atom(double x, Complex weight) { return add_atom(group_.locate(x), weight); }

  Measure& set_density(GridFunction density) {
    if (!(density.group() == group_)) throw Error("density lives on a different group");
    density_ = std::move(density);
    return *this;
  }

  const Group& group() const { return group_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<GridFunction>& density() const { return density_; }

  bool has_density() const { return density_ && density_->support().has_value(); }
  bool is_zero() const { return atoms_.empty() && !has_density(); }

  bool is_complex() const {
    for (const auto& a : atoms_)
      if (a.weight.imag() != 0.0) return true;
    if (density_)
      for (const auto& v : density_->values())
        if (v.imag() != 0.0) return true;
    return false;
  }

  /// Atoms and density collapsed into one weight per grid point.
  std::vector<Complex> kernel() const {
    std::vector<Complex> k(group_.size());
    if (density_) {
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = (*density_)[i] * group_.weight();
    }
    for (const auto& a : atoms_) k[a.index] += a.weight;
    return k;
  }

  /// Inclusive index range carrying mass, if any.
  std::optional<std::pair<std::size_t, std::size_t>> support() const {
    std::optional<std::pair<std::size_t, std::size_t>> s;
    if (density_) s = density_->support();
    for (const auto& a : atoms_) {
      if (!s) {
        s = std::make_pair(a.index, a.index);
      } else {
        s->first = std::min(s->first, a.index);
        s->second = std::max(s->second, a.index);
      }
    }
    return s;
  }

 private:
  Group group_;
  std::vector<Atom> atoms_;
  std::optional<GridFunction> density_;
};

inline Measure dirac(const Group& g, const Element& y) {
  Measure mu(g);
  mu.add_atom(y, 1.0);
  return mu;
}

inline Measure dirac(const Group& g, double y) { return dirac(g, g.locate(y)); }

/// |mu|(G) = sum |w_i| + sum |density(x)| h.
inline double total_variation(const Measure& mu) {
  double tv = 0.0;
  for (const auto& a : mu.atoms()) tv += std::abs(a.weight);
  if (mu.density()) {
    double dens = 0.0;
    for (const auto& v : mu.density()->values()) dens += std::abs(v);
    tv += dens * mu.group().weight();
  }
  return tv;
}

enum class ConvolutionPath { Auto, Direct, Fft };

namespace detail {

inline void check_admissible(const GridFunction& f, const Measure& mu) {
  const Group& g = f.group();
  if (g.is_cyclic_product()) return;
  const auto fs = f.support();
  const auto ms = mu.support();
  if (!fs || !ms) return;
  // Coordinates: f lives on lo + i; mu's mass on lo + j. The sum lands on
  // 2 lo + i + j, which must stay inside [lo, hi].
  const Coord lo = g.lo();
  const Coord first = 2 * lo + static_cast<Coord>(fs->first + ms->first);
  const Coord last = 2 * lo + static_cast<Coord>(fs->second + ms->second);
  if (first < g.lo() || last > g.hi()) throw Error("support overflow");
}

}  // namespace detail

/// (f * mu)(x) = sum_atoms w f(x - y) + sum_y density(y) f(x - y) h.
///
/// FiniteProduct groups use exact cyclic indexing; the Auto path switches to
/// an FFT for the density part. Window groups require supp f + supp mu to stay
/// inside the grid.
inline GridFunction convolve(const GridFunction& f, const Measure& mu, ConvolutionPath path = ConvolutionPath::Auto) {
  if (!(f.group() == mu.group())) throw Error("function and measure live on different groups");
  const Group& g = f.group();
  detail::check_admissible(f, mu);
  const std::size_t n = g.size();
  GridFunction out(g);
  const bool use_fft = g.is_cyclic_product() && mu.has_density() &&
                       (path == ConvolutionPath::Fft || (path == ConvolutionPath::Auto && n >= 64));
  if (path == ConvolutionPath::Fft && !g.is_cyclic_product()) throw Error("FFT convolution needs a finite group");

  if (g.is_cyclic_product()) {
    for (const auto& a : mu.atoms()) {
      for (std::size_t x = 0; x < n; ++x) out[x] += a.weight * f[g.cyclic_difference(x, a.index)];
    }
    if (mu.has_density()) {
      const auto& d = *mu.density();
      if (use_fft) {
        std::vector<Complex> kern(n);
        for (std::size_t i = 0; i < n; ++i) kern[i] = d[i] * g.weight();
        const auto conv = fft::cyclic_convolve(std::vector<Complex>(f.values().begin(), f.values().end()),
                                               std::move(kern), g.orders());
        for (std::size_t x = 0; x < n; ++x) out[x] += conv[x];
      } else {
        for (std::size_t x = 0; x < n; ++x) {
          Complex acc{};
          for (std::size_t y = 0; y < n; ++y) {
            if (d[y] != Complex{}) acc += d[y] * f[g.cyclic_difference(x, y)] * g.weight();
          }
          out[x] += acc;
        }
      }
    }
    return out;
  }

  // Window groups: index(x - y) = ix - iy - lo, where lo is the grid origin offset.
  const auto lo = g.lo();
  auto add_term = [&](std::size_t iy, Complex w) {
    const Coord offset = static_cast<Coord>(iy) + lo;  // coordinate of y
    for (std::size_t ix = 0; ix < n; ++ix) {
      const Coord src = static_cast<Coord>(ix) - offset;
      if (src < 0 || src >= static_cast<Coord>(n)) continue;
      const Complex v = f[static_cast<std::size_t>(src)];
      if (v != Complex{}) out[ix] += w * v;
    }
  };
  for (const auto& a : mu.atoms()) add_term(a.index, a.weight);
  if (mu.has_density()) {
    const auto& d = *mu.density();
    for (std::size_t iy = 0; iy < n; ++iy) {
      if (d[iy] != Complex{}) add_term(iy, d[iy] * g.weight());
    }
  }
  return out;
}

/// S_y f(x) = f(x - y). On window groups the shifted support must stay on the grid.
inline GridFunction shift(const GridFunction& f, const Element& y) {
  const Group& g = f.group();
  GridFunction out(g);
  if (g.is_cyclic_product()) {
    const std::size_t iy = g.index_or_throw(y);
    for (std::size_t x = 0; x < g.size(); ++x) out[x] = f[g.cyclic_difference(x, iy)];
    return out;
  }
  if (y.size() != 1) throw Error("shift has wrong dimension");
  const Coord c = y[0];
  if (const auto s = f.support()) {
    const Coord first = static_cast<Coord>(s->first) + c;
    const Coord last = static_cast<Coord>(s->second) + c;
    if (first < 0 || last >= static_cast<Coord>(g.size())) throw Error("support overflow");
    for (std::size_t i = s->first; i <= s->second; ++i) out[static_cast<std::size_t>(static_cast<Coord>(i) + c)] = f[i];
  }
  return out;
}

/// Integral over K of |f - S_y f|; tends to 0 as y -> 0 for every f in L^1_loc.
/// Values of S_y f falling off the grid count as zero.
inline double local_shift_deviation(const GridFunction& f, const Element& y, const Window& K) {
  const Group& g = f.group();
  double acc = 0.0;
  for (const auto& x : K.points()) {
    const std::size_t ix = g.index_or_throw(x);
    Complex shifted{};
    if (g.is_cyclic_product()) {
      shifted = f[g.cyclic_difference(ix, g.index_or_throw(y))];
    } else {
      shifted = f.at({x[0] - y.at(0)});
    }
    acc += std::abs(f[ix] - shifted);
  }
  return acc * g.weight();
}

/// mu^(gamma) = sum_atoms w <-y, gamma> + sum_y density(y) <-y, gamma> h.
inline Complex fourier_stieltjes(const Measure& mu, const SpectralPoint& gamma) {
  if (!gamma.is_character()) throw Error("not a character: use the Laplace transform for alpha > 0");
  const Group& g = mu.group();
  Complex acc{};
  for (const auto& a : mu.atoms()) acc += a.weight * pairing_negative(g, g.element(a.index), gamma);
  if (mu.has_density()) {
    const auto& d = *mu.density();
    Complex dens{};
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (d[i] != Complex{}) dens += d[i] * pairing_negative(g, g.element(i), gamma);
    }
    acc += dens * g.weight();
  }
  return acc;
}

/// max |mu^(gamma)| over the supplied characters: a lower bound for the sup over the dual.
inline double sup_fourier(const Measure& mu, std::span<const SpectralPoint> chars) {
  if (chars.empty()) throw Error("empty character list");
  double best = 0.0;
  for (const auto& c : chars) best = std::max(best, std::abs(fourier_stieltjes(mu, c)));
  return best;
}

}  // namespace lcanorm
