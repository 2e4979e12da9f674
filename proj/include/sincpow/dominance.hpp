// One-crossing convex dominance: if sum x = sum y and x_k <= y_k exactly on the
// coordinates where y_k < t (and x_k >= y_k elsewhere), then
// sum g(x_k) >= sum g(y_k) for every nondecreasing convex g. The proof is
// constructive; transfer_sequence() produces the mass transfers that carry y
// to x.
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sincpow::dominance {

inline constexpr double kHypothesisTol = 1e-12;
inline constexpr double kDominanceTol = 1e-10;

class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CrossingInstance {
  std::vector<double> x;
  std::vector<double> y;
  double t = 0.0;
};

enum class Hypothesis {
  kNone,
  kEqualSums,    // (i)  sum x == sum y
  kOneCrossing,  // (ii) x_k <= y_k when y_k < t, x_k >= y_k when y_k >= t
};

struct CrossingCheck {
  bool ok = true;
  Hypothesis failed = Hypothesis::kNone;
  // First violating coordinate for kOneCrossing; empty for kEqualSums.
  std::optional<std::size_t> index;

  std::string describe() const;
};

/// Moves delta from coordinate `from` (y_from < t) to `to` (y_to >= t).
struct TransferStep {
  std::size_t from = 0;
  std::size_t to = 0;
  double delta = 0.0;

  bool operator==(const TransferStep&) const = default;
};

struct DominanceResult {
  bool passed = false;
  // sum g(x) - sum g(y)
  double margin = 0.0;
  double sum_g_x = 0.0;
  double sum_g_y = 0.0;
  // sum g(z) after each transfer; trace.front() is sum g(y).
  std::vector<double> trace;
  bool monotone = true;
  std::vector<TransferStep> steps;
};

/// Throws std::invalid_argument on length mismatch or negative entries.
CrossingCheck check_one_crossing(std::span<const double> x,
                                 std::span<const double> y, double t);

inline CrossingCheck check_one_crossing(const CrossingInstance& inst) {
  return check_one_crossing(inst.x, inst.y, inst.t);
}

/// Transfers from the smallest eligible low index to the smallest eligible
/// high index, each time moving min(z_i - x_i, x_j - z_j). At most n - 1
/// steps. Throws HypothesisError if the instance fails check_one_crossing and
/// std::runtime_error if rounding leaves an unmatched residual above
/// tolerance.
std::vector<TransferStep> transfer_sequence(const CrossingInstance& inst);

/// Replays steps starting from `start`.
std::vector<double> apply_steps(std::span<const double> start,
                                std::span<const TransferStep> steps);

/// Checks sum g(x) >= sum g(y) - 1e-10 max(1, sum g(y)) and that no single
/// transfer decreases sum g.
DominanceResult dominance_verify(const CrossingInstance& inst,
                                 const std::function<double(double)>& g);

/// Same with g(u) = u^r, r >= 1.
DominanceResult dominance_verify(const CrossingInstance& inst, double r);

/// Deterministic (per seed, across platforms) instance satisfying both
/// hypotheses. n >= 2.
CrossingInstance random_instance(std::size_t n, std::uint64_t seed);

}  // namespace sincpow::dominance
