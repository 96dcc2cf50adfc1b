/// \file
/// Concrete realizations of sigma-compact LCA groups: finite products of
/// cyclic groups, windows of the integer lattice and uniform grids on the
/// real line. Also the dual characters, the half-plane/exterior-disc points
/// used by Laplace transforms, and compact windows K.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lcanorm {

using Complex = std::complex<double>;
using Coord = std::int64_t;

/// A group element in integer lattice coordinates. Window groups use a single
/// coordinate k, which sits at position k * step on the real line.
using Element = std::vector<Coord>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class GroupKind { FiniteProduct, IntegerWindow, RealGrid };

struct FiniteProductDesc {
  std::vector<Coord> orders;
};

struct IntegerWindowDesc {
  Coord halfwidth = 0;
  bool cone_only = false;
};

struct RealGridDesc {
  double halfwidth = 0.0;
  double step = 0.0;
  bool cone_only = false;
};

using GroupDescriptor = std::variant<FiniteProductDesc, IntegerWindowDesc, RealGridDesc>;

class Group;
Group make_group(const GroupDescriptor& descriptor);

/// Immutable description of a grid realization of G (or of its cone G+).
///
/// FiniteProduct addition is exact modular arithmetic. IntegerWindow and
/// RealGrid addition is partial: a result outside [lo, hi] is out of support
/// and never wraps around.
class Group {
 public:
  GroupKind kind() const { return kind_; }
  bool cone_only() const { return cone_; }
  bool is_compact() const { return kind_ == GroupKind::FiniteProduct; }
  bool is_discrete() const { return kind_ != GroupKind::RealGrid; }
  bool is_cyclic_product() const { return kind_ == GroupKind::FiniteProduct; }

  std::size_t dim() const { return kind_ == GroupKind::FiniteProduct ? orders_.size() : 1; }
  std::size_t size() const { return size_; }

  /// Haar weight carried by every grid point.
  double weight() const { return step_; }
  double step() const { return step_; }

  /// The descriptor this group was built from.
  GroupDescriptor descriptor() const {
    switch (kind_) {
      case GroupKind::FiniteProduct: return FiniteProductDesc{orders_};
      case GroupKind::IntegerWindow: return IntegerWindowDesc{hi_, cone_};
      case GroupKind::RealGrid: return RealGridDesc{static_cast<double>(hi_) * step_, step_, cone_};
    }
    return {};
  }

  const std::vector<Coord>& orders() const { return orders_; }
  Coord lo() const { return lo_; }
  Coord hi() const { return hi_; }

  Element element(std::size_t index) const {
    if (kind_ != GroupKind::FiniteProduct) return {lo_ + static_cast<Coord>(index)};
    Element e(orders_.size());
    for (std::size_t j = orders_.size(); j-- > 0;) {
      e[j] = static_cast<Coord>(index % static_cast<std::size_t>(orders_[j]));
      index /= static_cast<std::size_t>(orders_[j]);
    }
    return e;
  }

  /// Index of an element, or nullopt when it lies off the grid. Coordinates of
  /// FiniteProduct elements are reduced modulo the orders.
  std::optional<std::size_t> index_of(const Element& e) const {
    if (e.size() != dim()) return std::nullopt;
    if (kind_ != GroupKind::FiniteProduct) {
      if (e[0] < lo_ || e[0] > hi_) return std::nullopt;
      return static_cast<std::size_t>(e[0] - lo_);
    }
    std::size_t index = 0;
    for (std::size_t j = 0; j < orders_.size(); ++j) {
      index = index * static_cast<std::size_t>(orders_[j]) + static_cast<std::size_t>(mod(e[j], orders_[j]));
    }
    return index;
  }

  std::size_t index_or_throw(const Element& e) const {
    auto index = index_of(e);
    if (!index) throw Error("point " + format(e) + " is not on the grid of " + label());
    return *index;
  }

  bool contains(const Element& e) const { return index_of(e).has_value(); }

  /// Element sitting at the real position x of a one-dimensional group.
  Element locate(double x) const {
    if (dim() != 1) throw Error("scalar position given for a " + std::to_string(dim()) + "-dimensional group");
    const double scaled = x / step_;
    const auto k = static_cast<Coord>(std::llround(scaled));
    if (std::abs(scaled - static_cast<double>(k)) > 1e-6) {
      throw Error("position " + std::to_string(x) + " is off the grid of " + label());
    }
    Element e{k};
    if (kind_ == GroupKind::FiniteProduct) e[0] = mod(k, orders_[0]);
    if (!contains(e)) throw Error("position " + std::to_string(x) + " lies outside " + label());
    return e;
  }

  /// Real coordinate of an element along an axis (k * step for window groups).
  double position(const Element& e, std::size_t axis = 0) const { return static_cast<double>(e.at(axis)) * step_; }
  double position(std::size_t index) const {
    return kind_ == GroupKind::FiniteProduct ? static_cast<double>(element(index)[0])
                                             : static_cast<double>(lo_ + static_cast<Coord>(index)) * step_;
  }

  std::optional<Element> add(const Element& a, const Element& b) const {
    if (a.size() != dim() || b.size() != dim()) return std::nullopt;
    Element sum(dim());
    for (std::size_t j = 0; j < dim(); ++j) {
      sum[j] = a[j] + b[j];
      if (kind_ == GroupKind::FiniteProduct) sum[j] = mod(sum[j], orders_[j]);
    }
    if (!contains(sum)) return std::nullopt;
    return sum;
  }

  Element negate(const Element& a) const {
    Element out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      out[j] = kind_ == GroupKind::FiniteProduct ? mod(-a[j], orders_[j]) : -a[j];
    }
    return out;
  }

  /// Index of x - y on a FiniteProduct group, given indices of x and y.
  std::size_t cyclic_difference(std::size_t x, std::size_t y) const {
    std::size_t out = 0;
    std::size_t stride = 1;
    for (std::size_t j = orders_.size(); j-- > 0;) {
      const auto n = static_cast<std::size_t>(orders_[j]);
      const std::size_t xd = x % n, yd = y % n;
      out += ((xd + n - yd) % n) * stride;
      stride *= n;
      x /= n;
      y /= n;
    }
    return out;
  }

  std::string label() const {
    std::ostringstream os;
    os.precision(12);
    switch (kind_) {
      case GroupKind::FiniteProduct:
        for (std::size_t j = 0; j < orders_.size(); ++j) os << (j ? "x" : "") << "Z_" << orders_[j];
        break;
      case GroupKind::IntegerWindow:
        os << (cone_ ? "Z+" : "Z") << "[" << lo_ << "," << hi_ << "]";
        break;
      case GroupKind::RealGrid:
        os << (cone_ ? "R+" : "R") << "[" << static_cast<double>(lo_) * step_ << ","
           << static_cast<double>(hi_) * step_ << ";h=" << step_ << "]";
        break;
    }
    return os.str();
  }

  bool operator==(const Group& other) const {
    return kind_ == other.kind_ && orders_ == other.orders_ && lo_ == other.lo_ && hi_ == other.hi_ &&
           step_ == other.step_ && cone_ == other.cone_;
  }

  static Coord mod(Coord a, Coord n) {
    const Coord r = a % n;
    return r < 0 ? r + n : r;
  }

  static std::string format(const Element& e) {
    std::string s = "(";
    for (std::size_t j = 0; j < e.size(); ++j) s += (j ? "," : "") + std::to_string(e[j]);
    return s + ")";
  }

 private:
  friend Group make_group(const GroupDescriptor& descriptor);
  Group() = default;

  GroupKind kind_ = GroupKind::FiniteProduct;
  std::vector<Coord> orders_;
  Coord lo_ = 0;
  Coord hi_ = 0;
  double step_ = 1.0;
  bool cone_ = false;
  std::size_t size_ = 0;
};

inline Group make_group(const GroupDescriptor& descriptor) {
  Group g;
  if (const auto* fp = std::get_if<FiniteProductDesc>(&descriptor)) {
    if (fp->orders.empty()) throw Error("finite product needs at least one factor");
    std::size_t size = 1;
    for (Coord n : fp->orders) {
      if (n < 2) throw Error("cyclic order must be at least 2, got " + std::to_string(n));
      size *= static_cast<std::size_t>(n);
    }
    g.kind_ = GroupKind::FiniteProduct;
    g.orders_ = fp->orders;
    g.size_ = size;
    g.lo_ = 0;
    g.hi_ = static_cast<Coord>(size) - 1;
  } else if (const auto* iw = std::get_if<IntegerWindowDesc>(&descriptor)) {
    if (iw->halfwidth <= 0) throw Error("halfwidth must be positive");
    g.kind_ = GroupKind::IntegerWindow;
    g.cone_ = iw->cone_only;
    g.lo_ = iw->cone_only ? 0 : -iw->halfwidth;
    g.hi_ = iw->halfwidth;
  } else {
    const auto& rg = std::get<RealGridDesc>(descriptor);
    if (!(rg.halfwidth > 0.0) || !std::isfinite(rg.halfwidth)) throw Error("halfwidth must be positive");
    if (!(rg.step > 0.0) || !std::isfinite(rg.step)) throw Error("step must be positive");
    const double cells = rg.halfwidth / rg.step;
    const auto m = static_cast<Coord>(std::llround(cells));
    if (m < 1 || std::abs(cells - static_cast<double>(m)) > 1e-9 * std::max(1.0, cells)) {
      throw Error("step must divide the halfwidth evenly");
    }
    g.kind_ = GroupKind::RealGrid;
    g.cone_ = rg.cone_only;
    g.step_ = rg.step;
    g.lo_ = rg.cone_only ? 0 : -m;
    g.hi_ = m;
  }
  if (g.kind_ != GroupKind::FiniteProduct) g.size_ = static_cast<std::size_t>(g.hi_ - g.lo_ + 1);
  return g;
}

/// A finite window K of grid points. Interval windows on a RealGrid follow the
/// half-open cell convention: the cell at x covers [x, x + h).
class Window {
 public:
  static Window from_points(const Group& g, std::vector<Element> points) {
    if (points.empty()) throw Error("degenerate window");
    for (auto& p : points) p = g.element(g.index_or_throw(p));
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return Window(std::move(points));
  }

  /// Inclusive box of lattice coordinates.
  static Window box(const Group& g, const Element& from, const Element& to) {
    if (from.size() != g.dim() || to.size() != g.dim()) throw Error("window corner has wrong dimension");
    std::vector<Element> points;
    Element cur = from;
    for (std::size_t j = 0; j < from.size(); ++j) {
      if (from[j] > to[j]) throw Error("degenerate window");
    }
    while (true) {
      points.push_back(cur);
      std::size_t j = cur.size();
      while (j-- > 0) {
        if (++cur[j] <= to[j]) break;
        cur[j] = from[j];
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
    return from_points(g, std::move(points));
  }

  /// One-dimensional interval. Discrete groups take the inclusive integer range
  /// {from, ..., to}; a RealGrid takes the cells covering [from, to).
  static Window interval(const Group& g, double from, double to) {
    if (g.dim() != 1) throw Error("interval window needs a one-dimensional group");
    if (g.kind() == GroupKind::RealGrid) {
      const Coord a = g.locate(from)[0];
      const Coord b = static_cast<Coord>(std::llround(to / g.step()));
      if (std::abs(to / g.step() - static_cast<double>(b)) > 1e-6) throw Error("window end is off the grid");
      if (b <= a) throw Error("degenerate window");
      return box(g, {a}, {b - 1});
    }
    const auto a = static_cast<Coord>(std::llround(from));
    const auto b = static_cast<Coord>(std::llround(to));
    if (static_cast<double>(a) != from || static_cast<double>(b) != to) throw Error("window bounds must be integers");
    return box(g, {a}, {b});
  }

  static Window whole(const Group& g) {
    std::vector<Element> points;
    points.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) points.push_back(g.element(i));
    return Window(std::move(points));
  }

  static Window point(const Group& g, const Element& e) { return from_points(g, {e}); }

  const std::vector<Element>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

  Element lower() const {
    Element lo = points_.front();
    for (const auto& p : points_)
      for (std::size_t j = 0; j < p.size(); ++j) lo[j] = std::min(lo[j], p[j]);
    return lo;
  }
  Element upper() const {
    Element hi = points_.front();
    for (const auto& p : points_)
      for (std::size_t j = 0; j < p.size(); ++j) hi[j] = std::max(hi[j], p[j]);
    return hi;
  }

  bool operator==(const Window&) const = default;

 private:
  explicit Window(std::vector<Element> points) : points_(std::move(points)) {}
  std::vector<Element> points_;
};

inline double haar_measure(const Group& g, const Window& K) {
  if (K.size() == 0) throw Error("degenerate window");
  for (const auto& p : K.points()) g.index_or_throw(p);
  return static_cast<double>(K.size()) * g.weight();
}

/// A dual character (alpha == 0) or, on a cone group, a point of Lambda
/// (alpha > 0) with <x, lambda> = <x, gamma> exp(alpha x).
struct SpectralPoint {
  std::vector<double> theta;
  double alpha = 0.0;

  bool is_character() const { return alpha == 0.0; }
};

namespace detail {

// Phase of <x, gamma> as a fraction of a full turn, for FiniteProduct groups.
inline double cyclic_turns(const Group& g, const Element& x, const SpectralPoint& s) {
  double turns = 0.0;
  for (std::size_t j = 0; j < g.dim(); ++j) {
    const Coord n = g.orders()[j];
    const Coord t = Group::mod(static_cast<Coord>(std::llround(s.theta[j])), n);
    turns += static_cast<double>(Group::mod(t * Group::mod(x[j], n), n)) / static_cast<double>(n);
  }
  return turns - std::floor(turns);
}

inline void check_spectral(const Group& g, const SpectralPoint& s) {
  if (s.theta.size() != g.dim()) throw Error("spectral point has wrong dimension");
  if (s.alpha < 0.0) throw Error("decay rate must be nonnegative");
}

}  // namespace detail

/// <x, s>: exp(2 pi i sum theta_j x_j / n_j) on a FiniteProduct, otherwise
/// exp(i theta x) exp(alpha x) with x the real position.
inline Complex pairing(const Group& g, const Element& x, const SpectralPoint& s) {
  detail::check_spectral(g, s);
  if (g.kind() == GroupKind::FiniteProduct) {
    return std::polar(1.0, 2.0 * std::numbers::pi * detail::cyclic_turns(g, x, s));
  }
  const double pos = g.position(x);
  return std::polar(std::exp(s.alpha * pos), s.theta[0] * pos);
}

/// <-x, s>, the integrand of the Fourier-Stieltjes and Laplace transforms.
inline Complex pairing_negative(const Group& g, const Element& x, const SpectralPoint& s) {
  detail::check_spectral(g, s);
  if (g.kind() == GroupKind::FiniteProduct) {
    return std::polar(1.0, -2.0 * std::numbers::pi * detail::cyclic_turns(g, x, s));
  }
  const double pos = g.position(x);
  return std::polar(std::exp(-s.alpha * pos), -s.theta[0] * pos);
}

/// Sampled dual group. The full finite dual for a FiniteProduct (resolution
/// ignored); theta_k = 2 pi k / resolution for an integer window; `resolution`
/// points spanning [-pi/h, pi/h] for a RealGrid.
inline std::vector<SpectralPoint> characters(const Group& g, std::size_t resolution = 1024) {
  if (resolution < 1) throw Error("resolution must be at least 1");
  std::vector<SpectralPoint> out;
  switch (g.kind()) {
    case GroupKind::FiniteProduct:
      out.reserve(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        const Element e = g.element(i);
        out.push_back({std::vector<double>(e.begin(), e.end()), 0.0});
      }
      break;
    case GroupKind::IntegerWindow:
      for (std::size_t k = 0; k < resolution; ++k) {
        out.push_back({{2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(resolution)}, 0.0});
      }
      break;
    case GroupKind::RealGrid: {
      const double band = std::numbers::pi / g.step();
      if (resolution == 1) {
        out.push_back({{0.0}, 0.0});
        break;
      }
      for (std::size_t k = 0; k < resolution; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(resolution - 1);
        out.push_back({{-band + 2.0 * band * t}, 0.0});
      }
      break;
    }
  }
  return out;
}

/// Points of Lambda: every sampled character paired with every decay rate.
inline std::vector<SpectralPoint> lambda_grid(const Group& g, const std::vector<double>& alphas,
                                              std::size_t resolution = 1024) {
  if (!g.cone_only()) throw Error("Λ undefined: group not ordered");
  if (alphas.empty()) throw Error("at least one decay rate is required");
  for (double a : alphas) {
    if (!(a > 0.0) || !std::isfinite(a)) throw Error("decay rate must be positive for Λ points");
  }
  const auto chars = characters(g, resolution);
  std::vector<SpectralPoint> out;
  out.reserve(alphas.size() * chars.size());
  for (double a : alphas)
    for (const auto& c : chars) out.push_back({c.theta, a});
  return out;
}

}  // namespace lcanorm
