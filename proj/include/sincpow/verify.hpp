// Grid and optimizer based checks of the identities and extremal properties
// behind "f_r has a global minimum at x = 1/2", plus the finite-vector
// reduction that feeds the one-crossing dominance argument.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sincpow/core_math.hpp"
#include "sincpow/dominance.hpp"

namespace sincpow::verify {

struct GridSpec {
  std::size_t n_points = 1001;
  double lo = 0.0;
  double hi = 1.0;

  void validate() const;
  /// lo + (hi - lo) k / (n_points - 1), endpoints exact.
  std::vector<double> points() const;
};

struct VerificationReport {
  std::string name;
  bool passed = false;
  // Smallest slack seen; negative means the checked inequality was violated.
  double worst_margin = 0.0;
  double witness = 0.0;
  std::size_t points_checked = 0;
  // passed == (worst_margin >= -tolerance)
  double tolerance = 0.0;
  std::string detail;
};

std::string to_json_line(const VerificationReport& report);
std::string to_text_line(const VerificationReport& report);

/// Evaluation tolerance reachable with truncation half-width `budget` at the
/// worst point x = 1/2, floored at `floor`.
double budget_tol(double r, std::int64_t budget = 2000, double floor = 1e-10);

// |f_1(x) - 1| <= certified error + tol. margin = error_bound - |f_1(x) - 1|.
VerificationReport verify_parseval(std::span<const double> xs, double tol,
                                   const EvalParams& eval);
VerificationReport verify_parseval(const GridSpec& grid, double tol);

// s_0(x) >= 8/pi^2 - 1e-12.
VerificationReport verify_s0_min(std::span<const double> xs);
VerificationReport verify_s0_min(const GridSpec& grid);

// s_m(x) <= y_half(m) + 1e-12. Throws for m < 1.
VerificationReport verify_sm_max(std::int64_t m, std::span<const double> xs);
VerificationReport verify_sm_max(std::int64_t m, const GridSpec& grid);
/// All m in [1, m_max]; detail names the worst m.
VerificationReport verify_sm_max_range(std::int64_t m_max, const GridSpec& grid);

/// u = k/100 for k = 1..49.
std::vector<double> default_u_grid();

// phi_log_deriv(u, m + 1/2) <= u (3 - 2 pi^2) for m = 1..m_max.
VerificationReport verify_log_deriv_bound(std::int64_t m_max, std::span<const double> us);
// Relative error between phi_log_deriv and a centred difference of log phi
// stays below 1e-6. margin = 1e-6 - worst relative error.
VerificationReport verify_log_deriv_fd(std::int64_t m_max, std::span<const double> us);
double log_phi_central_difference(PhiPoint p);

struct TruncatedPair {
  std::vector<double> xs;  // (x_0, ..., x_N, X_N)
  std::vector<double> ys;  // (y_0, ..., y_N, Y_N)
  std::int64_t N = 0;
  double t = 0.0;

  dominance::CrossingInstance instance() const { return {xs, ys, t}; }
};

/// (y_0 + y_1) / 2.
double crossing_threshold();
/// Y_N = 1 - sum_{m<=N} y_m.
double y_tail(std::int64_t N);
/// Smallest N >= 0 with Y_N < crossing_threshold().
std::int64_t truncation_start();

/// x_m = s_m(x), y_m = s_m(1/2), tails from the r = 1 identity. Throws
/// std::invalid_argument when N < truncation_start().
TruncatedPair build_truncated_pair(double x, std::int64_t N);

/// Two reports: the certified margin f_r(x) - f_r(1/2) over the grid, and the
/// proof pipeline (truncated pair, one-crossing check, dominance with u^r) at
/// each grid point using N = truncation_start() + 10.
std::vector<VerificationReport> verify_proposition(double r, std::span<const double> xs,
                                                   double tol, const EvalParams& eval);
std::vector<VerificationReport> verify_proposition(double r, const GridSpec& grid, double tol);

/// f_half_closed(r) against f_r_certified(1/2) for each r.
VerificationReport verify_closed_form(std::span<const double> rs, double eval_tol_floor = 1e-10);

/// `count` random instances (sizes 2..40) against every r, checking
/// hypotheses, step count <= n - 1, per-step monotonicity and final margin.
VerificationReport verify_dominance_random(std::size_t count, std::span<const double> rs,
                                           std::uint64_t seed = 0);

/// f_r(x) - f_1(x) summed in symmetric pairs m, -(m+1) with
/// h^r - h = h expm1((r-1) log h); has the same minimizers as f_r.
double minimization_objective(double x, double r, std::int64_t N);

/// Golden-section search seeded by a 101-point scan. Returns 1/2 for r == 1.
double find_min(double r, double tol);

/// |find_min(r) - 1/2| <= tol for each r.
VerificationReport verify_find_min(std::span<const double> rs, double tol);

}  // namespace sincpow::verify
