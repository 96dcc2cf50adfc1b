// Command-line front end: norm, transform, opnorm and verify on JSON problems.
//
// Exit codes: 0 success, 1 verify failure, 2 malformed JSON, 3 inconsistent
// problem, 4 inconsistent operator-norm report.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lcanorm/function_spaces.hpp"
#include "lcanorm/laplace.hpp"
#include "lcanorm/measure.hpp"
#include "lcanorm/opnorm.hpp"
#include "lcanorm/problem.hpp"
#include "lcanorm/verify.hpp"

namespace {

using namespace lcanorm;
using io::json;

constexpr int kVerifyFailed = 1;
constexpr int kMalformed = 2;
constexpr int kInconsistent = 3;
constexpr int kReportInconsistent = 4;

struct Flags {
  std::string spec;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> resolution;
  std::optional<std::size_t> budget;
  std::string csv;
  std::string json_out;
  bool inject_fault = false;
  double step = 0.01;
};

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io::SpecError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io::SpecError("cannot write " + path);
  out << text;
}

io::ProblemSpec load(const Flags& flags, io::Task command) {
  if (flags.spec.empty()) throw io::SpecError("--spec is required");
  io::ProblemSpec spec = io::parse_problem(io::parse_json_text(read_file(flags.spec)));
  if (spec.task && *spec.task != command) throw io::SpecError("problem task does not match the command");
  if (flags.seed) spec.options.seed = *flags.seed;
  if (flags.resolution) spec.options.resolution = *flags.resolution;
  if (flags.budget) spec.options.budget = *flags.budget;
  if (spec.options.resolution == 0) throw io::SpecError("resolution must be positive");
  return spec;
}

int run_norm(const Flags& flags) {
  const auto spec = load(flags, io::Task::Norm);
  if (!spec.function) throw io::SpecError("norm needs a \"function\"");
  const GridFunction& f = *spec.function;
  json out;
  out["lp"] = {{"1", lp_norm(f, 1.0)}, {"2", lp_norm(f, 2.0)}, {"inf", lp_norm(f, kInfinity)}};
  if (spec.space) {
    out["space"] = spec.space->label();
    out["p"] = io::exponent_to_json(spec.space->p);
    out["value"] = norm(f, *spec.space);
    if (spec.space->family == NormFamily::Jp) out["jp"] = out["value"];
  }
  if (spec.window2) {
    if (!spec.space || spec.space->family != NormFamily::Jp) throw io::SpecError("window2 needs a Jp space");
    const auto cover = covering_constant(*spec.space->window, *spec.window2, spec.space->p);
    out["jp_window2"] = jp_norm(f, spec.space->p, *spec.window2);
    out["covering"] = {{"count", cover.count}, {"constant", cover.constant}};
  }
  emit(flags.json_out, out.dump(2) + "\n");
  return 0;
}

int run_transform(const Flags& flags) {
  const auto spec = load(flags, io::Task::Transform);
  if (!spec.measure && !spec.function) throw io::SpecError("transform needs a \"measure\" or a \"function\"");
  if (!spec.lambda && !spec.path) throw io::SpecError("transform needs a \"lambda\" or a \"path\"");
  const Group& g = *spec.group;
  json out;
  if (spec.lambda) {
    const SpectralPoint& s = *spec.lambda;
    out["lambda"] = {{"alpha", s.alpha}, {"theta", s.theta}};
    if (spec.measure) {
      out["measure"] = complex_json(s.is_character() ? fourier_stieltjes(*spec.measure, s) : laplace_measure(*spec.measure, s));
      out["total_variation"] = total_variation(*spec.measure);
    }
    if (spec.function) {
      Complex v;
      if (s.is_character()) {
        Measure as_density(g);
        as_density.set_density(*spec.function);
        v = fourier_stieltjes(as_density, s);
      } else {
        v = laplace_function(*spec.function, s);
      }
      out["function"] = complex_json(v);
      if (!s.is_character() && spec.space && spec.space->family == NormFamily::Jp) {
        const double y = spec.decay_step.value_or(g.step());
        const auto bound = decay_bound_check(*spec.function, s, *spec.space->window, y);
        out["decay_bound"] = {{"lhs", bound.lhs}, {"rhs", bound.rhs}};
        out["tail_bound"] = laplace_tail_bound(*spec.function, s, *spec.space->window, y);
      }
    }
  }
  if (spec.path) {
    if (!spec.measure) throw io::SpecError("a boundary path needs a \"measure\"");
    const auto path = boundary_path({spec.path->theta, 0.0}, spec.path->alpha_shape, spec.path->n_max);
    json seq = json::array();
    for (const auto& step : boundary_sequence(*spec.measure, path)) {
      seq.push_back({{"n", step.n}, {"deviation", step.deviation}, {"bound", step.bound}});
    }
    out["boundary_sequence"] = seq;
  }
  emit(flags.json_out, out.dump(2) + "\n");
  return 0;
}

int run_opnorm(const Flags& flags) {
  const auto spec = load(flags, io::Task::Opnorm);
  if (!spec.measure) throw io::SpecError("opnorm needs a \"measure\"");
  if (!spec.space) throw io::SpecError("opnorm needs a \"space\"");
  SandwichOptions opts;
  opts.resolution = spec.options.resolution;
  opts.alphas = spec.options.alphas;
  opts.ascent = {spec.options.budget, spec.options.seed, spec.options.starts};
  const SandwichReport r = sandwich(*spec.measure, *spec.space, opts);
  const std::string csv = std::string(io::csv_header()) + "\n" + io::csv_row(r) + "\n";
  const std::string csv_path = flags.csv.empty() ? spec.options.output : flags.csv;
  emit(flags.json_out, io::report_to_json(r).dump(2) + "\n");
  emit(csv_path, csv);
  if (!r.consistent) {
    std::cerr << "inconsistent report: the bounds do not nest\n";
    return kReportInconsistent;
  }
  return 0;
}

int run_verify(const Flags& flags) {
  verify::VerifyOptions opts;
  opts.step = flags.step;
  opts.inject_fault = flags.inject_fault;
  if (!flags.spec.empty()) {
    const json j = io::parse_json_text(read_file(flags.spec));
    if (j.is_object() && j.contains("check")) {
      const auto v = verify::replay(j);
      std::cout << j.at("check").get<std::string>() << ": " << (v.passed ? "pass" : "FAIL");
      if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
      std::cout << "\n";
      return v.passed ? 0 : kVerifyFailed;
    }
    const auto spec = io::parse_problem(j);
    if (spec.task && *spec.task != io::Task::Verify) throw io::SpecError("problem task does not match the command");
    opts.seed = spec.options.seed;
    opts.budget = spec.options.budget;
  }
  if (flags.seed) opts.seed = *flags.seed;
  if (flags.budget) opts.budget = *flags.budget;
  if (!(opts.step > 0.0)) throw io::SpecError("--step must be positive");

  const auto result = verify::run_suite(opts);
  std::size_t passed = 0, total = 0;
  for (const auto& c : result.checks) {
    std::cout << c.name << ": " << c.passed << "/" << c.total << "\n";
    passed += c.passed;
    total += c.total;
  }
  std::cout << "passed " << passed << " of " << total << " instances, " << result.failures.size() << " failed\n";
  for (const auto& f : result.failures) {
    std::cout << "FAIL " << f.check << ": " << f.detail << "\n" << f.instance.dump() << "\n";
  }
  if (!result.failures.empty() && !flags.json_out.empty()) emit(flags.json_out, result.failures.front().instance.dump(2) + "\n");
  return result.ok() ? 0 : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Windowed J^p norms, transforms and convolution operator bounds"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", flags.spec, "JSON problem file");
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_option("--resolution", flags.resolution, "dual-group sampling resolution");
    sub->add_option("--budget", flags.budget, "ascent evaluation budget");
    sub->add_option("--csv", flags.csv, "write CSV here instead of stdout");
    sub->add_option("--json", flags.json_out, "write JSON here instead of stdout");
  };
  auto* norm_cmd = app.add_subcommand("norm", "L^p and J^p norms of a function, covering constants");
  auto* transform_cmd = app.add_subcommand("transform", "Fourier-Stieltjes and Laplace transforms");
  auto* opnorm_cmd = app.add_subcommand("opnorm", "operator-norm sandwich report");
  auto* verify_cmd = app.add_subcommand("verify", "randomized property suite, or replay of one instance");
  for (auto* sub : {norm_cmd, transform_cmd, opnorm_cmd, verify_cmd}) add_common(sub);
  verify_cmd->add_flag("--inject-fault", flags.inject_fault, "shrink the TV bound by 1% (negative control)");
  verify_cmd->add_option("--step", flags.step, "finest RealGrid step for quadrature checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*norm_cmd) return run_norm(flags);
    if (*transform_cmd) return run_transform(flags);
    if (*opnorm_cmd) return run_opnorm(flags);
    return run_verify(flags);
  } catch (const io::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInconsistent;
  }
}
