#include "sincpow/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sincpow/core_math.hpp"
#include "sincpow/dominance.hpp"
#include "sincpow/figure.hpp"

namespace sincpow::cli {

namespace {

using verify::VerificationReport;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string e3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += g17(v[i]);
  }
  return s + "]";
}

struct EvalOptions {
  double x = 0.0;
  double r = 1.0;
  double tol = 1e-10;
  bool json = false;
};

struct MinimizeOptions {
  double r = 2.0;
  double tol = 1e-6;
};

struct VerifyOptions {
  std::string level = "fast";
  std::string format = "jsonl";
  bool inject_failure = false;
};

struct FigureOptions {
  std::vector<int> k_values{1, 2, 4, 8, 16, 32, 64, 128, 256};
  double base = 1.02;
  std::size_t n_points = 1001;
  std::string format = "csv";
  std::string out;
};

struct DominanceOptions {
  std::size_t n = 3;
  std::uint64_t seed = 0;
  double r = 2.0;
  bool equal = false;
};

int cmd_eval(const EvalOptions& o, std::int64_t max_terms, std::ostream& out) {
  const CertifiedValue v = f_r_certified(o.x, EvalParams{o.r, o.tol, max_terms});
  if (o.json) {
    nlohmann::json j{{"x", o.x},
                     {"r", o.r},
                     {"value", v.value},
                     {"error_bound", v.error_bound},
                     {"half_width", v.half_width}};
    out << j.dump() << '\n';
  } else {
    out << g17(v.value) << " +/- " << e3(v.error_bound) << "  (x=" << g17(o.x)
        << ", r=" << g17(o.r) << ", N=" << v.half_width << ")\n";
  }
  return kExitOk;
}

int cmd_minimize(const MinimizeOptions& o, std::int64_t max_terms, std::ostream& out) {
  const double argmin = verify::find_min(o.r, o.tol);
  const CertifiedValue v =
      f_r_certified(argmin, EvalParams{o.r, verify::budget_tol(o.r), max_terms});
  out << "argmin = " << g17(argmin) << '\n';
  out << "f_r(argmin) = " << g17(v.value) << " +/- " << e3(v.error_bound) << '\n';
  return kExitOk;
}

int cmd_verify_all(const VerifyOptions& o, std::ostream& out) {
  const Level level = o.level == "release" ? Level::kRelease : Level::kFast;
  const bool text = o.format == "text";
  std::vector<VerificationReport> failed;
  run_all_suites(level, o.inject_failure, [&](const VerificationReport& rep) {
    out << (text ? verify::to_text_line(rep) : verify::to_json_line(rep)) << '\n';
    out.flush();
    if (!rep.passed) failed.push_back(rep);
  });
  if (failed.empty()) return kExitOk;
  for (const auto& rep : failed) {
    out << "# FAILED " << rep.name << " witness=" << g17(rep.witness)
        << " worst_margin=" << g17(rep.worst_margin) << '\n';
  }
  return kExitVerificationFailure;
}

int cmd_figure(const FigureOptions& o, std::int64_t max_terms, std::ostream& out) {
  figure::FigureSpec spec;
  spec.k_values = o.k_values;
  spec.base = o.base;
  spec.n_points = o.n_points;
  spec.format = o.format == "svg" ? figure::Format::kSvg : figure::Format::kCsv;
  figure::write_figure(spec, o.out, max_terms);
  out << "wrote " << spec.k_values.size() << " curves x " << spec.n_points << " points to "
      << o.out << '\n';
  return kExitOk;
}

int cmd_dominance(const DominanceOptions& o, std::ostream& out) {
  dominance::CrossingInstance inst = dominance::random_instance(o.n, o.seed);
  if (o.equal) inst.x = inst.y;
  out << "t = " << g17(inst.t) << '\n';
  out << "x = " << join(inst.x) << '\n';
  out << "y = " << join(inst.y) << '\n';
  const auto result = dominance::dominance_verify(inst, o.r);
  out << "step 0: sum g = " << g17(result.trace.front()) << '\n';
  for (std::size_t s = 0; s < result.steps.size(); ++s) {
    const auto& step = result.steps[s];
    out << "step " << s + 1 << ": move " << g17(step.delta) << " from " << step.from << " to "
        << step.to << ", sum g = " << g17(result.trace[s + 1]) << '\n';
  }
  out << "steps = " << result.steps.size() << '\n';
  out << "margin = " << g17(result.margin) << '\n';
  out << (result.passed ? "dominance holds" : "dominance FAILED") << '\n';
  return result.passed ? kExitOk : kExitVerificationFailure;
}

}  // namespace

std::int64_t max_terms_from_env() {
  const char* raw = std::getenv("SINCPOW_MAX_TERMS");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxTerms;
  char* end = nullptr;
  const long long v = std::strtoll(raw, &end, 10);
  if (*end != '\0' || v < 2) {
    throw std::invalid_argument(std::string("SINCPOW_MAX_TERMS must be an integer >= 2, got '") +
                                raw + "'");
  }
  return v;
}

std::vector<VerificationReport> run_all_suites(
    Level level, bool inject_failure,
    const std::function<void(const VerificationReport&)>& sink) {
  const bool release = level == Level::kRelease;
  const verify::GridSpec grid{release ? std::size_t{100'000} : std::size_t{1001}};
  const verify::GridSpec sm_grid{release ? std::size_t{10'000} : std::size_t{1001}};
  const std::vector<double> prop_rs{1.0, 1.02, 1.5, 2.0, 5.0, 20.0, 158.6};
  const std::vector<double> closed_rs{1.0, 1.5, 2.0, 5.0, 10.0, 158.6};
  const std::vector<double> min_rs{1.0, 1.02, 1.5, 2.0, 5.0, 10.0, 20.0, 158.6};
  const std::vector<double> dom_rs{1.0, 1.5, 2.0, 4.0, 8.0};
  const auto us = verify::default_u_grid();

  std::vector<VerificationReport> all;
  auto emit = [&](VerificationReport rep) {
    if (sink) sink(rep);
    all.push_back(std::move(rep));
  };

  emit(verify::verify_parseval(grid, inject_failure ? -1.0 : 1e-10));
  emit(verify::verify_closed_form(closed_rs));
  emit(verify::verify_s0_min(grid));
  emit(verify::verify_sm_max_range(50, sm_grid));
  emit(verify::verify_log_deriv_bound(100, us));
  emit(verify::verify_log_deriv_fd(100, us));
  for (double r : prop_rs) {
    for (auto& rep : verify::verify_proposition(r, grid, 1e-8)) emit(std::move(rep));
  }
  emit(verify::verify_find_min(min_rs, 1e-6));
  emit(verify::verify_dominance_random(release ? 1000 : 200, dom_rs));
  return all;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified evaluation and verification of periodized sinc power sums"};
  app.require_subcommand(1);

  EvalOptions eval_opt;
  auto* eval = app.add_subcommand("eval", "Evaluate f_r(x) with a certified error bound");
  eval->add_option("--x", eval_opt.x, "Point in [0, 1]")->required()->check(CLI::Range(0.0, 1.0));
  eval->add_option("--r", eval_opt.r, "Exponent r >= 1")->required()->check(CLI::Range(1.0, 1e300));
  eval->add_option("--tol", eval_opt.tol, "Target truncation error")
      ->check(CLI::PositiveNumber);
  eval->add_flag("--json", eval_opt.json, "Emit one JSON object");

  MinimizeOptions min_opt;
  auto* minimize = app.add_subcommand("minimize", "Locate the minimizer of f_r on [0, 1]");
  minimize->add_option("--r", min_opt.r, "Exponent r >= 1")->required()->check(CLI::Range(1.0, 1e300));
  minimize->add_option("--tol", min_opt.tol, "Argmin tolerance")->check(CLI::PositiveNumber);

  VerifyOptions ver_opt;
  auto* verify_all = app.add_subcommand("verify-all", "Run every verification suite");
  verify_all->add_option("--level", ver_opt.level, "fast or release")
      ->check(CLI::IsMember({"fast", "release"}));
  verify_all->add_option("--format", ver_opt.format, "jsonl or text")
      ->check(CLI::IsMember({"jsonl", "text"}));
  verify_all->add_flag("--inject-failure", ver_opt.inject_failure,
                       "Corrupt the Parseval tolerance to exercise the failure path");

  FigureOptions fig_opt;
  auto* fig = app.add_subcommand("figure", "Write the f_r, r = base^k curve family");
  fig->add_option("--out", fig_opt.out, "Output path")->required();
  fig->add_option("--format", fig_opt.format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
  fig->add_option("--base", fig_opt.base, "Exponent base (> 1)");
  fig->add_option("--k", fig_opt.k_values, "Strictly increasing positive k values");
  fig->add_option("--points", fig_opt.n_points, "Grid points on [0, 1]");

  DominanceOptions dom_opt;
  auto* dom = app.add_subcommand("dominance", "Trace the mass transfers on a random instance");
  dom->add_option("--n", dom_opt.n, "Vector length (>= 2)")->check(CLI::Range(2, 1'000'000));
  dom->add_option("--seed", dom_opt.seed, "Generator seed");
  dom->add_option("--r", dom_opt.r, "Exponent of g(u) = u^r")->check(CLI::Range(1.0, 1e300));
  dom->add_flag("--equal", dom_opt.equal, "Use x = y");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const std::int64_t max_terms = max_terms_from_env();
    if (eval->parsed()) return cmd_eval(eval_opt, max_terms, out);
    if (minimize->parsed()) return cmd_minimize(min_opt, max_terms, out);
    if (verify_all->parsed()) return cmd_verify_all(ver_opt, out);
    if (fig->parsed()) return cmd_figure(fig_opt, max_terms, out);
    if (dom->parsed()) return cmd_dominance(dom_opt, out);
  } catch (const EvaluationError& e) {
    err << "evaluation failed: " << e.what() << '\n';
    return kExitEvaluationFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitEvaluationFailure;
  }
  return kExitUsage;
}

}  // namespace sincpow::cli
