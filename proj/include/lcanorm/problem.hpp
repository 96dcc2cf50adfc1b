/// \file
/// JSON problem files: group descriptors, measures, functions, norm specs,
/// spectral points, and the SandwichReport JSON/CSV emitters.

#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lcanorm/expr.hpp"
#include "lcanorm/function_spaces.hpp"
#include "lcanorm/group.hpp"
#include "lcanorm/laplace.hpp"
#include "lcanorm/measure.hpp"
#include "lcanorm/opnorm.hpp"

namespace lcanorm::io {

using nlohmann::json;

/// Malformed JSON text, with the 1-based line and column of the failure.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// Well-formed JSON that does not describe a consistent problem.
class SpecError : public Error {
 public:
  using Error::Error;
};

enum class Task { Norm, Transform, Opnorm, Verify };

inline std::optional<Task> task_from_name(const std::string& s) {
  if (s == "norm") return Task::Norm;
  if (s == "transform") return Task::Transform;
  if (s == "opnorm") return Task::Opnorm;
  if (s == "verify") return Task::Verify;
  return std::nullopt;
}

struct TaskOptions {
  std::size_t resolution = 1024;
  std::vector<double> alphas = {1.0, 0.1, 0.01};
  std::size_t budget = 5000;
  std::uint64_t seed = 42;
  std::size_t starts = 16;
  std::string output;
};

struct PathSpec {
  double alpha_shape = 1.0;
  std::size_t n_max = 100;
  std::vector<double> theta;
};

struct ProblemSpec {
  std::optional<Task> task;
  std::optional<Group> group;
  std::optional<Measure> measure;
  std::optional<GridFunction> function;
  std::optional<NormSpec> space;
  std::optional<Window> window2;
  std::optional<SpectralPoint> lambda;
  std::optional<PathSpec> path;
  std::optional<double> decay_step;
  TaskOptions options;
  json raw;
};

namespace detail {

template <typename T>
T get(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SpecError(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw SpecError(where + ": field \"" + std::string(key) + "\" has the wrong type");
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get<T>(j, key, where);
}

}  // namespace detail

inline GroupDescriptor parse_group_descriptor(const json& j) {
  const auto kind = detail::get<std::string>(j, "kind", "group");
  const bool cone = detail::get_or<bool>(j, "cone_only", false, "group");
  if (kind == "FiniteProduct") {
    if (cone) throw SpecError("group: cone_only is not allowed on a FiniteProduct");
    return FiniteProductDesc{detail::get<std::vector<Coord>>(j, "orders", "group")};
  }
  if (kind == "IntegerWindow") return IntegerWindowDesc{detail::get<Coord>(j, "halfwidth", "group"), cone};
  if (kind == "RealGrid") {
    return RealGridDesc{detail::get<double>(j, "halfwidth", "group"), detail::get<double>(j, "step", "group"), cone};
  }
  throw SpecError("group: unknown kind \"" + kind + "\"");
}

inline json to_json(const GroupDescriptor& d) {
  if (const auto* fp = std::get_if<FiniteProductDesc>(&d)) return {{"kind", "FiniteProduct"}, {"orders", fp->orders}};
  if (const auto* iw = std::get_if<IntegerWindowDesc>(&d)) {
    return {{"kind", "IntegerWindow"}, {"halfwidth", iw->halfwidth}, {"cone_only", iw->cone_only}};
  }
  const auto& rg = std::get<RealGridDesc>(d);
  return {{"kind", "RealGrid"}, {"halfwidth", rg.halfwidth}, {"step", rg.step}, {"cone_only", rg.cone_only}};
}

inline Group parse_group(const json& j) {
  try {
    return make_group(parse_group_descriptor(j));
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(std::string("group: ") + e.what());
  }
}

/// A point is a number (position on a one-dimensional group) or an array of
/// integer coordinates.
inline Element parse_point(const Group& g, const json& j) {
  if (j.is_number()) return g.locate(j.get<double>());
  if (j.is_array()) {
    Element e;
    for (const auto& c : j) {
      if (!c.is_number_integer()) throw SpecError("point coordinates must be integers");
      e.push_back(c.get<Coord>());
    }
    return g.element(g.index_or_throw(e));
  }
  throw SpecError("a point must be a number or an array of integers");
}

inline json point_to_json(const Group& g, std::size_t index) {
  if (g.dim() == 1) {
    if (g.kind() == GroupKind::RealGrid) return g.position(index);
    return g.element(index)[0];
  }
  return g.element(index);
}

/// {"from": a, "to": b} (inclusive integers, or half-open [a, b) on a
/// RealGrid), {"all": true}, or {"points": [...]}.
inline Window parse_window(const Group& g, const json& j) {
  if (!j.is_object()) throw SpecError("window must be an object");
  if (detail::get_or<bool>(j, "all", false, "window")) return Window::whole(g);
  if (j.contains("points")) {
    std::vector<Element> pts;
    for (const auto& p : j.at("points")) pts.push_back(parse_point(g, p));
    return Window::from_points(g, std::move(pts));
  }
  const auto& from = j.at("from");
  const auto& to = j.at("to");
  if (from.is_array()) return Window::box(g, from.get<Element>(), to.get<Element>());
  return Window::interval(g, from.get<double>(), to.get<double>());
}

inline json window_to_json(const Group& g, const Window& K) {
  json pts = json::array();
  for (const auto& p : K.points()) pts.push_back(point_to_json(g, g.index_or_throw(p)));
  return {{"points", pts}};
}

inline Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {detail::get_or<double>(j, "re", 0.0, "value"), detail::get_or<double>(j, "im", 0.0, "value")};
}

/// {"samples": [numbers in grid order]} | {"samples": [{"at", "re", "im"}]} |
/// {"expr": "...", "imag": "...", "support": window}.
inline GridFunction parse_function(const Group& g, const json& j) {
  if (!j.is_object()) throw SpecError("function payload must be an object");
  GridFunction f(g);
  if (j.contains("samples")) {
    const auto& s = j.at("samples");
    if (!s.is_array()) throw SpecError("samples must be an array");
    if (!s.empty() && s.front().is_number()) {
      if (s.size() != g.size()) throw SpecError("sample count does not match the group size");
      for (std::size_t i = 0; i < s.size(); ++i) f[i] = s[i].get<double>();
    } else {
      for (const auto& item : s) f[g.index_or_throw(parse_point(g, item.at("at")))] += parse_complex(item);
    }
    return f;
  }
  if (!j.contains("expr")) throw SpecError("function payload needs \"samples\" or \"expr\"");
  const Expression re(detail::get<std::string>(j, "expr", "function"));
  const std::optional<Expression> im =
      j.contains("imag") ? std::optional<Expression>(Expression(detail::get<std::string>(j, "imag", "function")))
                         : std::nullopt;
  std::optional<Window> support;
  if (j.contains("support")) support = parse_window(g, j.at("support"));
  std::vector<double> coords(g.dim());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Element e = g.element(i);
    for (std::size_t k = 0; k < g.dim(); ++k) coords[k] = g.position(e, k);
    f[i] = Complex(re(coords), im ? (*im)(coords) : 0.0);
  }
  if (support) {
    GridFunction masked(g);
    for (const auto& p : support->points()) {
      const auto i = g.index_or_throw(p);
      masked[i] = f[i];
    }
    f = masked;
  }
  for (const auto& v : f.values()) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw SpecError("function expression is not finite on the grid");
  }
  return f;
}

/// Nonzero samples as {"at", "re", "im"} records; doubles round-trip exactly.
inline json function_to_json(const GridFunction& f) {
  json s = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == Complex{}) continue;
    s.push_back({{"at", point_to_json(f.group(), i)}, {"re", f[i].real()}, {"im", f[i].imag()}});
  }
  return {{"samples", s}};
}

/// {"atoms": [{"at", "re", "im"}], "density": function payload}.
inline Measure parse_measure(const Group& g, const json& j) {
  if (!j.is_object()) throw SpecError("measure must be an object");
  Measure mu(g);
  if (j.contains("atoms")) {
    for (const auto& a : j.at("atoms")) mu.add_atom(parse_point(g, a.at("at")), parse_complex(a));
  }
  if (j.contains("density")) mu.set_density(parse_function(g, j.at("density")));
  return mu;
}

inline json measure_to_json(const Measure& mu) {
  const Group& g = mu.group();
  json atoms = json::array();
  for (const auto& a : mu.atoms()) {
    atoms.push_back({{"at", point_to_json(g, a.index)}, {"re", a.weight.real()}, {"im", a.weight.imag()}});
  }
  json out = {{"atoms", atoms}};
  if (mu.has_density()) out["density"] = function_to_json(*mu.density());
  return out;
}

inline double parse_exponent(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity") return kInfinity;
    throw SpecError("p must be a number or \"inf\"");
  }
  return j.get<double>();
}

inline json exponent_to_json(double p) { return p == kInfinity ? json("inf") : json(p); }

/// {"family": "Lp"|"Jp", "p": 2, "window": {...}}.
inline NormSpec parse_space(const Group& g, const json& j) {
  const auto family = detail::get<std::string>(j, "family", "space");
  if (!j.contains("p")) throw SpecError("space: missing \"p\"");
  const double p = parse_exponent(j.at("p"));
  try {
    if (family == "Lp") return NormSpec::lp(p);
    if (family == "Jp") {
      if (!j.contains("window")) throw SpecError("space: Jp needs a window");
      return NormSpec::jp(p, parse_window(g, j.at("window")));
    }
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(std::string("space: ") + e.what());
  }
  throw SpecError("space: unknown family \"" + family + "\"");
}

inline json space_to_json(const Group& g, const NormSpec& s) {
  json out = {{"family", s.family == NormFamily::Lp ? "Lp" : "Jp"}, {"p", exponent_to_json(s.p)}};
  if (s.family == NormFamily::Jp) out["window"] = window_to_json(g, *s.window);
  return out;
}

inline std::vector<double> parse_theta(const Group& g, const json& j) {
  if (!j.contains("theta")) return std::vector<double>(g.dim(), 0.0);
  const auto& t = j.at("theta");
  if (t.is_number()) return {t.get<double>()};
  return t.get<std::vector<double>>();
}

/// {"alpha": a, "theta": t}.
inline SpectralPoint parse_spectral(const Group& g, const json& j) {
  SpectralPoint s{parse_theta(g, j), detail::get_or<double>(j, "alpha", 0.0, "lambda")};
  if (s.theta.size() != g.dim()) throw SpecError("lambda: theta has the wrong dimension");
  return s;
}

inline ProblemSpec parse_problem(const json& j) {
  if (!j.is_object()) throw SpecError("problem must be a JSON object");
  ProblemSpec spec;
  spec.raw = j;
  try {
    if (j.contains("task")) {
      spec.task = task_from_name(detail::get<std::string>(j, "task", "problem"));
      if (!spec.task) throw SpecError("unknown task \"" + j.at("task").get<std::string>() + "\"");
    }
    if (j.contains("group")) spec.group = parse_group(j.at("group"));
    const bool needs_group = j.contains("measure") || j.contains("function") || j.contains("space") ||
                             j.contains("window2") || j.contains("lambda");
    if (needs_group && !spec.group) throw SpecError("problem needs a group");
    if (j.contains("measure")) spec.measure = parse_measure(*spec.group, j.at("measure"));
    if (j.contains("function")) spec.function = parse_function(*spec.group, j.at("function"));
    if (j.contains("space")) spec.space = parse_space(*spec.group, j.at("space"));
    if (j.contains("window2")) spec.window2 = parse_window(*spec.group, j.at("window2"));
    if (j.contains("lambda")) spec.lambda = parse_spectral(*spec.group, j.at("lambda"));
    if (j.contains("path")) {
      const auto& p = j.at("path");
      spec.path = PathSpec{detail::get<double>(p, "alpha_shape", "path"),
                           detail::get_or<std::size_t>(p, "n_max", 100, "path"),
                           spec.group ? parse_theta(*spec.group, p) : std::vector<double>{0.0}};
    }
    if (j.contains("decay_step")) spec.decay_step = detail::get<double>(j, "decay_step", "problem");
    if (j.contains("options")) {
      const auto& o = j.at("options");
      auto& opt = spec.options;
      opt.resolution = detail::get_or<std::size_t>(o, "resolution", opt.resolution, "options");
      opt.alphas = detail::get_or<std::vector<double>>(o, "alphas", opt.alphas, "options");
      opt.budget = detail::get_or<std::size_t>(o, "budget", opt.budget, "options");
      opt.seed = detail::get_or<std::uint64_t>(o, "seed", opt.seed, "options");
      opt.starts = detail::get_or<std::size_t>(o, "starts", opt.starts, "options");
      opt.output = detail::get_or<std::string>(o, "output", opt.output, "options");
    }
  } catch (const SpecError&) {
    throw;
  } catch (const Error& e) {
    throw SpecError(e.what());
  } catch (const json::exception& e) {
    throw SpecError(e.what());
  }
  return spec;
}

/// Parses JSON text, reporting malformed input by line and column.
inline json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t upto = e.byte == 0 ? 0 : std::min(text.size(), e.byte - 1);
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(line, column, e.what());
  }
}

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline json report_to_json(const SandwichReport& r) {
  json out = {{"group", r.group},
              {"space", r.space},
              {"p", exponent_to_json(r.p)},
              {"fourier_lb", r.fourier_lb},
              {"lambda_lb", r.lambda_lb ? json(*r.lambda_lb) : json(nullptr)},
              {"ascent_estimate", r.ascent_estimate},
              {"exact_value", r.exact_value ? json(*r.exact_value) : json(nullptr)},
              {"tv_ub", r.tv_ub},
              {"consistent", r.consistent}};
  return out;
}

inline const char* csv_header() {
  return "group,space,p,fourier_lb,lambda_lb,ascent_estimate,exact_value,tv_ub,consistent";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline std::string csv_row(const SandwichReport& r) {
  std::ostringstream os;
  os << csv_field(r.group) << ',' << csv_field(r.space) << ',' << (r.p == kInfinity ? "inf" : format_number(r.p)) << ','
     << format_number(r.fourier_lb) << ',' << (r.lambda_lb ? format_number(*r.lambda_lb) : "") << ','
     << format_number(r.ascent_estimate) << ',' << (r.exact_value ? format_number(*r.exact_value) : "") << ','
     << format_number(r.tv_ub) << ',' << (r.consistent ? "true" : "false");
  return os.str();
}

}  // namespace lcanorm::io
