#include "sincpow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace sincpow::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExtremumTol = 1e-12;
constexpr double kFdRelTol = 1e-6;
constexpr std::int64_t kPipelineExtraTerms = 10;

// Keeps the smallest margin and where it occurred.
class MarginTracker {
 public:
  MarginTracker(std::string name, double tolerance) {
    report_.name = std::move(name);
    report_.tolerance = tolerance;
    report_.worst_margin = kInf;
  }

  void observe(double margin, double where) {
    if (std::isnan(margin)) margin = -kInf;
    ++report_.points_checked;
    if (report_.points_checked == 1 || margin < report_.worst_margin) {
      report_.worst_margin = margin;
      report_.witness = where;
    }
  }

  VerificationReport finish(std::string detail = {}) {
    if (report_.points_checked == 0) report_.worst_margin = 0.0;
    report_.passed = report_.worst_margin >= -report_.tolerance;
    report_.detail = std::move(detail);
    return report_;
  }

  double worst() const { return report_.worst_margin; }

 private:
  VerificationReport report_;
};

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string fmt_r(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", r);
  return buf;
}

double pow_r(double base, double r) { return r == 1.0 ? base : std::pow(base, r); }

}  // namespace

void GridSpec::validate() const {
  if (n_points < 2) throw std::invalid_argument("GridSpec: n_points must be >= 2");
  if (!(lo < hi)) throw std::invalid_argument("GridSpec: lo must be < hi");
}

std::vector<double> GridSpec::points() const {
  validate();
  std::vector<double> xs(n_points);
  const double span = hi - lo;
  const double last = static_cast<double>(n_points - 1);
  for (std::size_t k = 0; k < n_points; ++k) {
    xs[k] = lo + span * (static_cast<double>(k) / last);
  }
  xs.back() = hi;
  return xs;
}

std::string to_json_line(const VerificationReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["passed"] = report.passed;
  j["worst_margin"] = report.worst_margin;
  j["witness"] = report.witness;
  j["points_checked"] = report.points_checked;
  j["tolerance"] = report.tolerance;
  if (!report.detail.empty()) j["detail"] = report.detail;
  return j.dump();
}

std::string to_text_line(const VerificationReport& report) {
  std::string s = report.passed ? "PASS " : "FAIL ";
  s += report.name + "  worst_margin=" + fmt_double(report.worst_margin) +
       "  witness=" + fmt_double(report.witness) +
       "  points=" + std::to_string(report.points_checked) +
       "  tol=" + fmt_double(report.tolerance);
  if (!report.detail.empty()) s += "  (" + report.detail + ")";
  return s;
}

double budget_tol(double r, std::int64_t budget, double floor) {
  return std::max(floor, tail_bound(budget, r, 0.5));
}

VerificationReport verify_parseval(std::span<const double> xs, double tol,
                                   const EvalParams& eval) {
  EvalParams p = eval;
  p.r = 1.0;
  MarginTracker tracker("parseval", tol);
  for (double x : xs) {
    const CertifiedValue f = f_r_certified(x, p);
    tracker.observe(f.error_bound - std::abs(f.value - 1.0), x);
  }
  return tracker.finish("eval_tol=" + fmt_double(p.tol));
}

VerificationReport verify_parseval(const GridSpec& grid, double tol) {
  EvalParams p{1.0, budget_tol(1.0)};
  return verify_parseval(grid.points(), tol, p);
}

VerificationReport verify_s0_min(std::span<const double> xs) {
  const double floor_value = y_half(0);
  MarginTracker tracker("s0_min", kExtremumTol);
  for (double x : xs) tracker.observe(s_m(0, x) - floor_value, x);
  return tracker.finish();
}

VerificationReport verify_s0_min(const GridSpec& grid) { return verify_s0_min(grid.points()); }

VerificationReport verify_sm_max(std::int64_t m, std::span<const double> xs) {
  if (m < 1) throw std::invalid_argument("verify_sm_max: m must be >= 1");
  const double peak = y_half(m);
  MarginTracker tracker("sm_max[m=" + std::to_string(m) + "]", kExtremumTol);
  for (double x : xs) tracker.observe(peak - s_m(m, x), x);
  return tracker.finish();
}

VerificationReport verify_sm_max(std::int64_t m, const GridSpec& grid) {
  return verify_sm_max(m, grid.points());
}

VerificationReport verify_sm_max_range(std::int64_t m_max, const GridSpec& grid) {
  if (m_max < 1) throw std::invalid_argument("verify_sm_max_range: m_max must be >= 1");
  const auto xs = grid.points();
  VerificationReport worst;
  std::int64_t worst_m = 1;
  std::size_t total = 0;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    VerificationReport r = verify_sm_max(m, xs);
    total += r.points_checked;
    if (m == 1 || r.worst_margin < worst.worst_margin) {
      worst = r;
      worst_m = m;
    }
  }
  worst.name = "sm_max[m=1.." + std::to_string(m_max) + "]";
  worst.points_checked = total;
  worst.detail = "worst m=" + std::to_string(worst_m);
  return worst;
}

std::vector<double> default_u_grid() {
  std::vector<double> us;
  for (int k = 1; k <= 49; ++k) us.push_back(k / 100.0);
  return us;
}

VerificationReport verify_log_deriv_bound(std::int64_t m_max, std::span<const double> us) {
  if (m_max < 1) throw std::invalid_argument("verify_log_deriv_bound: m_max must be >= 1");
  MarginTracker tracker("log_deriv_bound[m=1.." + std::to_string(m_max) + "]", kExtremumTol);
  std::int64_t worst_m = 1;
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const double D = static_cast<double>(m) + 0.5;
    for (double u : us) {
      const double before = tracker.worst();
      tracker.observe(log_deriv_upper_bound(u) - phi_log_deriv({u, D}), u);
      if (tracker.worst() < before) worst_m = m;
    }
  }
  return tracker.finish("worst m=" + std::to_string(worst_m));
}

double log_phi_central_difference(PhiPoint p) {
  const double step = 1e-4 * std::min(p.u, 0.5 - p.u);
  const double up = std::log(phi({p.u + step, p.D}));
  const double down = std::log(phi({p.u - step, p.D}));
  return (up - down) / (2.0 * step);
}

VerificationReport verify_log_deriv_fd(std::int64_t m_max, std::span<const double> us) {
  if (m_max < 1) throw std::invalid_argument("verify_log_deriv_fd: m_max must be >= 1");
  MarginTracker tracker("log_deriv_fd[m=1.." + std::to_string(m_max) + "]", 0.0);
  for (std::int64_t m = 1; m <= m_max; ++m) {
    const double D = static_cast<double>(m) + 0.5;
    for (double u : us) {
      const double exact = phi_log_deriv({u, D});
      const double fd = log_phi_central_difference({u, D});
      tracker.observe(kFdRelTol - std::abs(fd - exact) / std::abs(exact), u);
    }
  }
  return tracker.finish();
}

double crossing_threshold() { return 0.5 * (s_m(0, 0.5) + s_m(1, 0.5)); }

double y_tail(std::int64_t N) {
  if (N < 0) throw std::invalid_argument("y_tail: N must be >= 0");
  double partial = 0.0;
  for (std::int64_t m = 0; m <= N; ++m) partial += s_m(m, 0.5);
  return 1.0 - partial;
}

std::int64_t truncation_start() {
  const double t = crossing_threshold();
  std::int64_t N = 0;
  while (!(y_tail(N) < t)) ++N;
  return N;
}

TruncatedPair build_truncated_pair(double x, std::int64_t N) {
  const std::int64_t n0 = truncation_start();
  if (N < n0) {
    throw std::invalid_argument("build_truncated_pair: N=" + std::to_string(N) +
                                " is below N0=" + std::to_string(n0));
  }
  TruncatedPair pair;
  pair.N = N;
  pair.t = crossing_threshold();
  pair.xs.reserve(static_cast<std::size_t>(N) + 2);
  pair.ys.reserve(static_cast<std::size_t>(N) + 2);
  double sx = 0.0;
  double sy = 0.0;
  for (std::int64_t m = 0; m <= N; ++m) {
    pair.xs.push_back(s_m(m, x));
    pair.ys.push_back(s_m(m, 0.5));
    sx += pair.xs.back();
    sy += pair.ys.back();
  }
  auto tail = [](double partial) {
    const double rest = 1.0 - partial;
    // The exact tail is nonnegative; a tiny negative value is rounding.
    if (rest < 0.0 && rest > -1e-12) return 0.0;
    if (rest < 0.0) {
      throw std::runtime_error("build_truncated_pair: partial sum exceeds 1 by " +
                               fmt_double(-rest));
    }
    return rest;
  };
  pair.xs.push_back(tail(sx));
  pair.ys.push_back(tail(sy));
  return pair;
}

std::vector<VerificationReport> verify_proposition(double r, std::span<const double> xs,
                                                   double tol, const EvalParams& eval) {
  EvalParams p = eval;
  p.r = r;
  p.validate();
  const CertifiedValue half = f_r_certified(0.5, p);
  const std::string tag = "[r=" + fmt_r(r) + "]";

  MarginTracker value("proposition" + tag, tol);
  MarginTracker pipeline("proof_pipeline" + tag, dominance::kDominanceTol);
  const std::int64_t N = truncation_start() + kPipelineExtraTerms;
  double raw_min = kInf;
  double raw_argmin = 0.5;

  for (double x : xs) {
    const CertifiedValue f = f_r_certified(x, p);
    const double diff = f.value - half.value;
    if (diff < raw_min) {
      raw_min = diff;
      raw_argmin = x;
    }
    value.observe(diff + f.error_bound + half.error_bound, x);

    const auto inst = build_truncated_pair(x, N).instance();
    if (!dominance::check_one_crossing(inst).ok) {
      pipeline.observe(-kInf, x);
      continue;
    }
    const auto dom = dominance::dominance_verify(inst, r);
    const double margin = dom.monotone ? dom.margin / std::max(1.0, dom.sum_g_y) : -kInf;
    pipeline.observe(margin, x);
  }

  return {value.finish("f_r(1/2)=" + fmt_double(half.value) + " min diff=" +
                       fmt_double(raw_min) + " at x=" + fmt_double(raw_argmin) +
                       " eval_tol=" + fmt_double(p.tol)),
          pipeline.finish("N=" + std::to_string(N))};
}

std::vector<VerificationReport> verify_proposition(double r, const GridSpec& grid, double tol) {
  return verify_proposition(r, grid.points(), tol, EvalParams{r, budget_tol(r)});
}

VerificationReport verify_closed_form(std::span<const double> rs, double eval_tol_floor) {
  MarginTracker tracker("closed_form_half", 0.0);
  for (double r : rs) {
    const double tol = budget_tol(r, 100'000, eval_tol_floor);
    const CertifiedValue closed = f_half_closed(r, tol);
    const CertifiedValue direct = f_r_certified(0.5, EvalParams{r, tol});
    const double combined = closed.error_bound + direct.error_bound;
    tracker.observe(combined - std::abs(closed.value - direct.value), r);
  }
  return tracker.finish();
}

VerificationReport verify_dominance_random(std::size_t count, std::span<const double> rs,
                                           std::uint64_t seed) {
  MarginTracker tracker("dominance_random", dominance::kDominanceTol);
  std::size_t longest = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t s = seed + i;
    const std::size_t n = 2 + static_cast<std::size_t>(s % 39);
    const auto inst = dominance::random_instance(n, s);
    if (!dominance::check_one_crossing(inst).ok) {
      tracker.observe(-kInf, static_cast<double>(s));
      continue;
    }
    for (double r : rs) {
      const auto dom = dominance::dominance_verify(inst, r);
      longest = std::max(longest, dom.steps.size());
      const bool short_enough = dom.steps.size() + 1 <= n;
      const double margin = dom.monotone && short_enough
                                ? dom.margin / std::max(1.0, dom.sum_g_y)
                                : -kInf;
      tracker.observe(margin, static_cast<double>(s));
    }
  }
  return tracker.finish("longest transfer sequence=" + std::to_string(longest));
}

double minimization_objective(double x, double r, std::int64_t N) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("minimization_objective: x in [0,1]");
  // Close to r = 1 the variation of f_r is a small fraction of f_r ~ 1, so the
  // constant f_1 = 1 is subtracted term by term.
  const bool near_one = r < 1.5;
  const double s = sin_pi(x);
  const double sin2 = s * s;
  auto term = [&](double a) {
    const double pa = kPi * a;
    const double v = std::abs(pa) < 1e-4 ? h(a) : sin2 / (pa * pa);
    if (!near_one) return pow_r(v, r);
    if (v <= 0.0) return 0.0;
    return v * std::expm1((r - 1.0) * std::log(v));
  };
  double sum = 0.0;
  for (std::int64_t m = N; m >= 0; --m) {
    const double md = static_cast<double>(m);
    sum += term(x + md) + term(x - (md + 1.0));
  }
  return sum;
}

double find_min(double r, double tol) {
  if (!(r >= 1.0)) throw std::invalid_argument("find_min: r must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("find_min: tol must be positive");
  if (r == 1.0) return 0.5;

  std::int64_t N = 2;
  while (N < 100'000 && tail_bound(N, r, 0.5) > 1e-13) N *= 2;
  N = std::min<std::int64_t>(N, 100'000);
  auto f = [&](double x) { return minimization_objective(x, r, N); };

  constexpr int kScan = 101;
  int best = 0;
  double best_val = kInf;
  for (int k = 0; k < kScan; ++k) {
    const double v = f(k / 100.0);
    if (v < best_val) {
      best_val = v;
      best = k;
    }
  }
  double a = std::max(0, best - 1) / 100.0;
  double b = std::min(kScan - 1, best + 1) / 100.0;

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

VerificationReport verify_find_min(std::span<const double> rs, double tol) {
  MarginTracker tracker("find_min", 0.0);
  for (double r : rs) tracker.observe(tol - std::abs(find_min(r, tol) - 0.5), r);
  return tracker.finish();
}

}  // namespace sincpow::verify
