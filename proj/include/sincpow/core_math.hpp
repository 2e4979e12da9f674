// Periodized sinc power sums f_r(x) = sum_m h(x+m)^r with h(x) = sinc^2(pi x),
// evaluated with analytic truncation bounds.
//
// All functions here are pure; they may be called concurrently.
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sincpow {

inline constexpr double kPi = 3.14159265358979323846;

/// Raised when a requested tolerance cannot be met within the truncation cap.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultMaxTerms = 10'000'000;

struct EvalParams {
  double r = 1.0;
  double tol = 1e-10;
  std::int64_t max_terms = kDefaultMaxTerms;

  /// Throws std::invalid_argument unless r >= 1, tol > 0 and max_terms >= 2.
  void validate() const;
};

/// A real number together with a bound on its distance from the exact value.
struct CertifiedValue {
  double value = 0.0;
  double error_bound = 0.0;
  // Truncation half-width that produced the value (0 when not applicable).
  std::int64_t half_width = 0;

  double lower() const { return value - error_bound; }
  double upper() const { return value + error_bound; }
  bool contains(double exact) const {
    return exact >= lower() && exact <= upper();
  }
};

/// Point (u, D) for Phi_D(u); u = x - 1/2 and D = m + 1/2.
struct PhiPoint {
  double u = 0.0;
  double D = 0.5;
};

/// sin(x)/x, continuous at 0.
double sinc(double x);

/// sin(pi x) with the argument reduced modulo 1 before scaling, so integer
/// arguments give exact zeros and large |x| keeps full relative accuracy.
double sin_pi(double x);

/// h(x) = sinc^2(pi x).
double h(double x);

/// s_m(x) = h(x+m) + h(x-(m+1)) via the closed form
/// sin^2(pi x)/pi^2 * (1/(m+x)^2 + 1/(m+1-x)^2). Requires x in [0, 1].
double s_m(std::int64_t m, double x);

/// s_m(1/2) = 8 / (pi^2 (2m+1)^2).
double y_half(std::int64_t m);

/// Upper bound on sum_{|m|>N} h(x+m)^r for x in [0, 1]. Requires N >= 2.
double tail_bound(std::int64_t N, double r, double x);

/// Smallest N in [2, max_terms] with tail_bound(N, r, x) <= tol; throws
/// EvaluationError when even max_terms is not enough.
std::int64_t required_half_width(double x, const EvalParams& params);

/// f_r(x) for x in [0, 1], truncated to |m| <= N with N chosen from the tail
/// bound. error_bound = tail bound + (4 (2N+1) + 10 r) * eps * |sum|.
CertifiedValue f_r_certified(double x, const EvalParams& params);

/// Sum_{|m|<=N} h(x+m)^r without any tail logic. x in [0, 1].
double f_r_partial(double x, double r, std::int64_t N);

/// f_r(1/2) = 2^{1-r} sum_{m>=0} y_half(m)^r, with the tail sandwiched
/// between two integrals. Independent of f_r_certified.
CertifiedValue f_half_closed(double r, double tol);

/// Phi_D(u) = cos^2(pi u) (1/(D+u)^2 + 1/(D-u)^2); |u| <= 1/2, D >= 1/2.
double phi(PhiPoint p);

/// d/du log Phi_D(u). Only defined for u in (0, 1/2) and D >= 3/2, which is
/// where the bound u (3 - 2 pi^2) holds.
double phi_log_deriv(PhiPoint p);

/// u (3 - 2 pi^2).
double log_deriv_upper_bound(double u);

}  // namespace sincpow
