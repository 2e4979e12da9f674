#include "sincpow/core_math.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace sincpow {

namespace {

// Doubles in error messages; std::to_string(double) prints %f.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSincTaylorThreshold = 1e-4;

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double pow_r(double base, double r) {
  if (r == 1.0) return base;
  if (r == 2.0) return base * base;
  return std::pow(base, r);
}

// sin^2(pi a) / (pi a)^2 where sin2 = sin^2(pi a) is supplied by the caller
// (it only depends on a mod 1).
double sinc_sq_from(double sin2, double a) {
  const double pa = kPi * a;
  if (std::abs(pa) < kSincTaylorThreshold) {
    const double s = 1.0 - pa * pa / 6.0;
    return s * s;
  }
  return sin2 / (pa * pa);
}

// Summation allowance of 4 eps per term plus the r-fold amplification of the
// few-ulp relative error in each base value under pow(., r).
double rounding_allowance(double n_terms, double r, double sum) {
  return (4.0 * n_terms + 10.0 * r) * kEps * std::abs(sum);
}

// Compensated summation is good to 2 eps |sum| + O(n eps^2) for nonnegative
// terms; the r term is as above.
double compensated_allowance(double n_terms, double r, double sum) {
  return (8.0 + 10.0 * r + 4.0 * n_terms * kEps) * kEps * std::abs(sum);
}

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": x must lie in [0, 1], got " +
                                num(x));
  }
}

void require_exponent(double r, const char* what) {
  if (!(r >= 1.0) || !std::isfinite(r)) {
    throw std::invalid_argument(std::string(what) +
                                ": exponent r must be >= 1, got " +
                                num(r));
  }
}

}  // namespace

void EvalParams::validate() const {
  require_exponent(r, "EvalParams");
  if (!(tol > 0.0)) {
    throw std::invalid_argument("EvalParams: tol must be positive");
  }
  if (max_terms < 2) {
    throw std::invalid_argument("EvalParams: max_terms must be >= 2");
  }
}

double sinc(double x) {
  if (std::abs(x) < kSincTaylorThreshold) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double sin_pi(double x) {
  const double n = std::nearbyint(x);
  const double frac = x - n;  // exact for |x| < 2^52
  const double s = std::sin(kPi * frac);
  return std::fmod(std::abs(n), 2.0) == 0.0 ? s : -s;
}

double h(double x) {
  const double s = sin_pi(x);
  return sinc_sq_from(s * s, x);
}

double s_m(std::int64_t m, double x) {
  if (m < 0) throw std::invalid_argument("s_m: m must be >= 0");
  require_unit_interval(x, "s_m");
  const double s = sin_pi(x);
  const double sin2 = s * s;
  const double md = static_cast<double>(m);
  return sinc_sq_from(sin2, md + x) + sinc_sq_from(sin2, md + 1.0 - x);
}

double y_half(std::int64_t m) {
  if (m < 0) throw std::invalid_argument("y_half: m must be >= 0");
  const double odd = 2.0 * static_cast<double>(m) + 1.0;
  return 8.0 / (kPi * kPi * odd * odd);
}

double tail_bound(std::int64_t N, double r, double x) {
  if (N < 2) throw std::invalid_argument("tail_bound: N must be >= 2");
  require_exponent(r, "tail_bound");
  require_unit_interval(x, "tail_bound");

  // For k >= N+1: h(x+k) <= sin^2(pi x) (pi (x+k))^-2 and
  // h(x-k) <= sin^2(pi x) (pi (k-x))^-2; each one-sided sum is bounded by the
  // integral of the decreasing majorant from N to infinity.
  const double s = sin_pi(x);
  const double sin2 = s * s;
  if (sin2 == 0.0) return 0.0;
  const double nd = static_cast<double>(N);
  const double log_scale =
      r * std::log(sin2) - 2.0 * r * std::log(kPi) - std::log(2.0 * r - 1.0);
  const double pos = std::exp(log_scale + (1.0 - 2.0 * r) * std::log(nd + x));
  const double neg = std::exp(log_scale + (1.0 - 2.0 * r) * std::log(nd - x));
  return pos + neg;
}

std::int64_t required_half_width(double x, const EvalParams& params) {
  params.validate();
  require_unit_interval(x, "required_half_width");
  if (tail_bound(params.max_terms, params.r, x) > params.tol) {
    throw EvaluationError(
        "tolerance " + num(params.tol) +
        " not reachable within max_terms=" + std::to_string(params.max_terms) +
        " for r=" + num(params.r));
  }
  std::int64_t lo = 2;
  std::int64_t hi = params.max_terms;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (tail_bound(mid, params.r, x) <= params.tol) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

double f_r_partial(double x, double r, std::int64_t N) {
  require_unit_interval(x, "f_r_partial");
  require_exponent(r, "f_r_partial");
  const double s = sin_pi(x);
  const double sin2 = s * s;
  CompensatedSum acc;
  // Outermost terms first: they are the smallest.
  for (std::int64_t m = N; m >= 1; --m) {
    const double md = static_cast<double>(m);
    acc.add(pow_r(sinc_sq_from(sin2, x + md), r));
    acc.add(pow_r(sinc_sq_from(sin2, x - md), r));
  }
  acc.add(pow_r(sinc_sq_from(sin2, x), r));
  return acc.value();
}

CertifiedValue f_r_certified(double x, const EvalParams& params) {
  const std::int64_t N = required_half_width(x, params);
  const double sum = f_r_partial(x, params.r, N);
  const double n_terms = 2.0 * static_cast<double>(N) + 1.0;
  CertifiedValue out;
  out.value = sum;
  out.error_bound = tail_bound(N, params.r, x) + rounding_allowance(n_terms, params.r, sum);
  out.half_width = N;
  return out;
}

CertifiedValue f_half_closed(double r, double tol) {
  require_exponent(r, "f_half_closed");
  if (!(tol > 0.0)) throw std::invalid_argument("f_half_closed: tol must be positive");

  // sum_{m>M} (2m+1)^{-2r} lies between the integrals of (2t+1)^{-2r} over
  // [M+1, inf) and [M, inf), i.e. (2M+3)^{1-2r}/(2(2r-1)) and
  // (2M+1)^{1-2r}/(2(2r-1)).
  const double log_c = r * std::log(8.0 / (kPi * kPi)) - std::log(2.0 * (2.0 * r - 1.0));
  auto tail_lo = [&](double M) { return std::exp(log_c + (1.0 - 2.0 * r) * std::log(2.0 * M + 3.0)); };
  auto tail_hi = [&](double M) { return std::exp(log_c + (1.0 - 2.0 * r) * std::log(2.0 * M + 1.0)); };
  const double scale = std::exp2(1.0 - r);
  auto half_gap = [&](std::int64_t M) {
    const double md = static_cast<double>(M);
    return 0.5 * scale * (tail_hi(md) - tail_lo(md));
  };

  constexpr std::int64_t kMaxTerms = 100'000'000;
  std::int64_t hi = 1;
  while (half_gap(hi) > 0.5 * tol) {
    if (hi >= kMaxTerms) {
      throw EvaluationError("f_half_closed: tolerance " + num(tol) +
                            " not reachable for r=" + num(r));
    }
    hi = std::min(hi * 2, kMaxTerms);
  }
  std::int64_t lo = 0;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (half_gap(mid) <= 0.5 * tol) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const std::int64_t M = lo;

  CompensatedSum acc;
  for (std::int64_t m = M; m >= 0; --m) acc.add(pow_r(y_half(m), r));
  const double md = static_cast<double>(M);
  const double partial = acc.value();
  const double n_terms = static_cast<double>(M) + 1.0;

  CertifiedValue out;
  out.value = scale * (partial + 0.5 * (tail_lo(md) + tail_hi(md)));
  // exp/log evaluation of the tail integrals is good to far better than 1e-12.
  out.error_bound = half_gap(M) + 1e-12 * scale * tail_hi(md) +
                    compensated_allowance(n_terms, r, out.value);
  out.half_width = M;
  return out;
}

double phi(PhiPoint p) {
  if (!(std::abs(p.u) <= 0.5) || !(p.D >= 0.5)) {
    throw std::invalid_argument("phi: need |u| <= 1/2 and D >= 1/2");
  }
  const double w = 0.5 - std::abs(p.u);  // cos(pi u) = sin(pi w)
  const double c = sin_pi(w);
  const double c2 = c * c;
  auto term = [&](double a) {
    if (p.D == 0.5 && a == w) {
      // cos^2(pi u)/w^2 = pi^2 sinc^2(pi w), finite as w -> 0.
      const double sc = sinc(kPi * w);
      return kPi * kPi * sc * sc;
    }
    return c2 / (a * a);
  };
  return term(p.D + std::abs(p.u)) + term(p.D - std::abs(p.u));
}

double phi_log_deriv(PhiPoint p) {
  if (!(p.u > 0.0 && p.u < 0.5)) {
    throw std::invalid_argument("phi_log_deriv: u must lie in (0, 1/2)");
  }
  if (!(p.D >= 1.5)) throw std::invalid_argument("phi_log_deriv: D must be >= 3/2");
  const double u = p.u;
  const double d2 = p.D * p.D;
  const double u2 = u * u;
  return -2.0 * kPi * std::tan(kPi * u) + 2.0 * u / (d2 + u2) + 4.0 * u / (d2 - u2);
}

double log_deriv_upper_bound(double u) { return u * (3.0 - 2.0 * kPi * kPi); }

}  // namespace sincpow
