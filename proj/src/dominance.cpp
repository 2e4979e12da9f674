#include "sincpow/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

namespace sincpow::dominance {

namespace {

// Doubles in error messages; std::to_string(double) prints %f.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double scaled_tol(double v) { return kHypothesisTol * std::max(1.0, std::abs(v)); }

double sum_of(std::span<const double> v) {
  double s = 0.0;
  for (double e : v) s += e;
  return s;
}

double sum_g(std::span<const double> v, const std::function<double(double)>& g) {
  double s = 0.0;
  for (double e : v) s += g(e);
  return s;
}

// Uniform double in [0, 1) from the top 53 bits; unlike
// std::uniform_real_distribution this is identical on every standard library.
double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::string CrossingCheck::describe() const {
  std::ostringstream os;
  switch (failed) {
    case Hypothesis::kNone:
      os << "hypotheses hold";
      break;
    case Hypothesis::kEqualSums:
      os << "sum x differs from sum y";
      break;
    case Hypothesis::kOneCrossing:
      os << "one-crossing condition fails at index " << index.value_or(0);
      break;
  }
  return os.str();
}

CrossingCheck check_one_crossing(std::span<const double> x,
                                 std::span<const double> y, double t) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("check_one_crossing: x and y differ in length");
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] >= 0.0) || !(y[k] >= 0.0)) {
      throw std::invalid_argument("check_one_crossing: negative entry at index " +
                                  std::to_string(k));
    }
  }

  CrossingCheck out;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double tol = scaled_tol(y[k]);
    const bool bad = y[k] < t ? x[k] > y[k] + tol : x[k] < y[k] - tol;
    if (bad) {
      out.ok = false;
      out.failed = Hypothesis::kOneCrossing;
      out.index = k;
      return out;
    }
  }
  const double sy = sum_of(y);
  if (std::abs(sum_of(x) - sy) > scaled_tol(sy)) {
    out.ok = false;
    out.failed = Hypothesis::kEqualSums;
  }
  return out;
}

std::vector<TransferStep> transfer_sequence(const CrossingInstance& inst) {
  const CrossingCheck check = check_one_crossing(inst);
  if (!check.ok) throw HypothesisError("transfer_sequence: " + check.describe());

  const std::size_t n = inst.x.size();
  const auto& x = inst.x;
  std::vector<double> z = inst.y;
  std::vector<std::size_t> low;
  std::vector<std::size_t> high;
  for (std::size_t k = 0; k < n; ++k) {
    (inst.y[k] < inst.t ? low : high).push_back(k);
  }

  auto surplus = [&](std::size_t i) { return z[i] - x[i]; };
  auto deficit = [&](std::size_t j) { return x[j] - z[j]; };
  auto first_eligible = [&](const std::vector<std::size_t>& idx, auto gap) {
    for (std::size_t k : idx) {
      if (gap(k) > scaled_tol(x[k])) return std::optional<std::size_t>(k);
    }
    return std::optional<std::size_t>();
  };

  std::vector<TransferStep> steps;
  while (true) {
    const auto i = first_eligible(low, surplus);
    const auto j = first_eligible(high, deficit);
    if (!i && !j) break;
    if (!i || !j) {
      double residual = 0.0;
      for (std::size_t k = 0; k < n; ++k) residual += std::abs(z[k] - x[k]);
      const double drift_tol = static_cast<double>(n) * scaled_tol(sum_of(inst.y));
      if (residual <= drift_tol) break;
      throw std::runtime_error("transfer_sequence: unmatched residual " +
                               num(residual) + " exceeds tolerance");
    }
    const double delta = std::min(surplus(*i), deficit(*j));
    const bool pins_low = surplus(*i) <= deficit(*j);
    z[*i] -= delta;
    z[*j] += delta;
    if (pins_low || std::abs(z[*i] - x[*i]) <= scaled_tol(x[*i])) z[*i] = x[*i];
    if (!pins_low || std::abs(z[*j] - x[*j]) <= scaled_tol(x[*j])) z[*j] = x[*j];
    steps.push_back({*i, *j, delta});
  }
  return steps;
}

std::vector<double> apply_steps(std::span<const double> start,
                                std::span<const TransferStep> steps) {
  std::vector<double> z(start.begin(), start.end());
  for (const auto& s : steps) {
    z.at(s.from) -= s.delta;
    z.at(s.to) += s.delta;
  }
  return z;
}

DominanceResult dominance_verify(const CrossingInstance& inst,
                                 const std::function<double(double)>& g) {
  DominanceResult out;
  out.steps = transfer_sequence(inst);

  std::vector<double> z = inst.y;
  out.trace.push_back(sum_g(z, g));
  for (const auto& s : out.steps) {
    const double a = z[s.from];
    const double b = z[s.to];
    const double lo = std::max(0.0, a - s.delta);
    const double change = g(lo) + g(b + s.delta) - g(a) - g(b);
    if (change < -kHypothesisTol * std::max(1.0, std::abs(out.trace.back()))) {
      out.monotone = false;
    }
    z[s.from] = lo;
    z[s.to] = b + s.delta;
    out.trace.push_back(sum_g(z, g));
  }

  out.sum_g_x = sum_g(inst.x, g);
  out.sum_g_y = sum_g(inst.y, g);
  out.margin = out.sum_g_x - out.sum_g_y;
  out.passed = out.monotone &&
               out.margin >= -kDominanceTol * std::max(1.0, std::abs(out.sum_g_y));
  return out;
}

DominanceResult dominance_verify(const CrossingInstance& inst, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("dominance_verify: r must be >= 1");
  return dominance_verify(inst, [r](double u) { return std::pow(std::max(u, 0.0), r); });
}

CrossingInstance random_instance(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_instance: n must be >= 2");
  std::mt19937_64 rng(seed);

  CrossingInstance inst;
  inst.y.resize(n);
  for (double& v : inst.y) v = unit(rng) < 0.1 ? 0.0 : unit(rng);

  // Split the distinct sorted values at a random gap so both sides are
  // nonempty whenever y is not constant.
  std::vector<double> sorted = inst.y;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> gaps;
  for (std::size_t k = 1; k < n; ++k) {
    if (sorted[k - 1] < sorted[k]) gaps.push_back(k);
  }
  if (gaps.empty()) {
    inst.t = sorted.front();
  } else {
    const std::size_t g = gaps[static_cast<std::size_t>(unit(rng) * static_cast<double>(gaps.size()))];
    inst.t = 0.5 * (sorted[g - 1] + sorted[g]);
  }

  inst.x = inst.y;
  double removed = 0.0;
  std::vector<std::size_t> high;
  for (std::size_t k = 0; k < n; ++k) {
    if (inst.y[k] < inst.t) {
      const double keep = unit(rng) < 0.2 ? 1.0 : unit(rng);
      inst.x[k] = inst.y[k] * keep;
      removed += inst.y[k] - inst.x[k];
    } else {
      high.push_back(k);
    }
  }

  std::vector<double> weights(high.size());
  double total = 0.0;
  for (double& w : weights) {
    w = unit(rng) < 0.2 ? 0.0 : unit(rng);
    total += w;
  }
  if (total == 0.0) {
    weights.front() = 1.0;
    total = 1.0;
  }
  for (std::size_t q = 0; q < high.size(); ++q) {
    inst.x[high[q]] += removed * (weights[q] / total);
  }
  return inst;
}

}  // namespace sincpow::dominance
