#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "sincpow/dominance.hpp"

using namespace sincpow::dominance;

namespace {

double total(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

// Replays `steps` one at a time and checks the state invariants after each.
void check_intermediate_states(const CrossingInstance& inst, const std::vector<TransferStep>& steps) {
  std::vector<double> z = inst.y;
  const double sum0 = total(z);
  for (const auto& s : steps) {
    REQUIRE(s.delta > 0.0);
    REQUIRE(inst.y[s.from] < inst.t);
    REQUIRE(inst.y[s.to] >= inst.t);
    z[s.from] -= s.delta;
    z[s.to] += s.delta;
    REQUIRE(std::abs(total(z) - sum0) <= 1e-12 * std::max(1.0, sum0));
    for (std::size_t k = 0; k < z.size(); ++k) {
      const double tol = 1e-12 * std::max(1.0, inst.y[k]);
      if (inst.y[k] < inst.t) {
        REQUIRE(z[k] >= inst.x[k] - tol);
        REQUIRE(z[k] <= inst.y[k] + tol);
      } else {
        REQUIRE(z[k] >= inst.y[k] - tol);
        REQUIRE(z[k] <= inst.x[k] + tol);
      }
    }
  }
  for (std::size_t k = 0; k < z.size(); ++k) REQUIRE(std::abs(z[k] - inst.x[k]) <= 1e-12);
}

}  // namespace

TEST_SUITE("dominance") {

TEST_CASE("check_one_crossing examples") {
  CHECK(check_one_crossing(std::vector<double>{3, 1, 0}, std::vector<double>{2, 1, 1}, 1.5).ok);

  const std::vector<double> same{0.3, 0.0, 2.5, 1.0};
  for (double t : {0.0, 0.5, 1.0, 3.0}) CHECK(check_one_crossing(same, same, t).ok);

  const auto bad = check_one_crossing(std::vector<double>{1, 2}, std::vector<double>{2, 1}, 1.5);
  CHECK_FALSE(bad.ok);
  CHECK(bad.failed == Hypothesis::kOneCrossing);
  REQUIRE(bad.index.has_value());
  CHECK(*bad.index == 0);

  const auto sums = check_one_crossing(std::vector<double>{3, 1, 0}, std::vector<double>{2, 1, 0.5}, 1.5);
  CHECK_FALSE(sums.ok);
  CHECK(sums.failed == Hypothesis::kEqualSums);
  CHECK_FALSE(sums.index.has_value());
}

TEST_CASE("check_one_crossing errors and tolerance") {
  CHECK_THROWS_AS(check_one_crossing(std::vector<double>{1, 2}, std::vector<double>{1}, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_one_crossing(std::vector<double>{-1, 2}, std::vector<double>{0, 1}, 0.5),
                  std::invalid_argument);
  // Violations below 1e-12 are admitted.
  CHECK(check_one_crossing(std::vector<double>{1 + 5e-13, 0.5 - 5e-13},
                           std::vector<double>{1, 0.5}, 0.8).ok);
  CHECK_FALSE(check_one_crossing(std::vector<double>{1 - 1e-9, 0.5 + 1e-9},
                                 std::vector<double>{1, 0.5}, 0.8).ok);
}

TEST_CASE("transfer_sequence examples") {
  const CrossingInstance a{{3, 1, 0}, {2, 1, 1}, 1.5};
  const auto one = transfer_sequence(a);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == TransferStep{2, 0, 1.0});

  const CrossingInstance same{{0.2, 0.7, 0.1}, {0.2, 0.7, 0.1}, 0.5};
  CHECK(transfer_sequence(same).empty());

  const CrossingInstance b{{4, 0, 0}, {2, 1, 1}, 1.5};
  const auto two = transfer_sequence(b);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == TransferStep{1, 0, 1.0});
  CHECK(two[1] == TransferStep{2, 0, 1.0});
  CHECK(apply_steps(b.y, two) == b.x);

  const CrossingInstance invalid{{1, 2}, {2, 1}, 1.5};
  CHECK_THROWS_AS(transfer_sequence(invalid), HypothesisError);
}

TEST_CASE("dominance_verify examples") {
  const CrossingInstance a{{3, 1, 0}, {2, 1, 1}, 1.5};
  const auto res = dominance_verify(a, 2.0);
  CHECK(res.passed);
  CHECK(res.margin == doctest::Approx(4.0));
  CHECK(res.sum_g_x == doctest::Approx(10.0));
  CHECK(res.sum_g_y == doctest::Approx(6.0));
  REQUIRE(res.trace.size() == 2);
  CHECK(res.trace.front() == doctest::Approx(6.0));
  CHECK(res.trace.back() == doctest::Approx(10.0));

  const CrossingInstance same{{0.2, 0.7, 0.1}, {0.2, 0.7, 0.1}, 0.5};
  for (double r : {1.0, 3.0, 17.0}) {
    const auto eq = dominance_verify(same, r);
    CHECK(eq.passed);
    CHECK(eq.margin == 0.0);
  }

  CHECK_THROWS_AS(dominance_verify(a, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(dominance_verify(CrossingInstance{{1, 2}, {2, 1}, 1.5}, 2.0), HypothesisError);
}

TEST_CASE("random_instance contract") {
  CHECK_THROWS_AS(random_instance(1, 0), std::invalid_argument);
  CHECK(check_one_crossing(random_instance(2, 0)).ok);

  const auto first = random_instance(10, 1);
  const auto second = random_instance(10, 1);
  CHECK(first.x == second.x);
  CHECK(first.y == second.y);
  CHECK(first.t == second.t);
  CHECK(random_instance(10, 2).y != first.y);

  int with_both_sides = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto inst = random_instance(10, seed);
    REQUIRE(check_one_crossing(inst).ok);
    const auto low = std::count_if(inst.y.begin(), inst.y.end(), [&](double v) { return v < inst.t; });
    if (low > 0 && low < 10) ++with_both_sides;
  }
  CHECK(with_both_sides == 1000);
}

TEST_CASE("property: transfer invariants on random instances") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const std::size_t n = 2 + seed % 50;
    const auto inst = random_instance(n, seed);
    const auto steps = transfer_sequence(inst);
    REQUIRE(steps.size() <= n - 1);
    check_intermediate_states(inst, steps);
  }
}

TEST_CASE("property: each transfer does not decrease sum g for convex nondecreasing g") {
  std::vector<std::function<double(double)>> gs;
  for (double r : {1.0, 1.5, 2.0, 4.0, 8.0}) {
    gs.emplace_back([r](double u) { return std::pow(u, r); });
  }
  for (double c : {0.0, 0.1, 0.5, 0.9}) {
    gs.emplace_back([c](double u) { return std::max(0.0, u - c); });
  }
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = random_instance(3 + seed % 30, seed);
    for (const auto& g : gs) {
      const auto res = dominance_verify(inst, g);
      REQUIRE(res.monotone);
      REQUIRE(res.passed);
      for (std::size_t k = 1; k < res.trace.size(); ++k) {
        REQUIRE(res.trace[k] >= res.trace[k - 1] - 1e-12 * std::max(1.0, res.trace[k - 1]));
      }
    }
  }
}

TEST_CASE("property: end-to-end dominance, r uniform in [1, 30]") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> rd(1.0, 30.0);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto inst = random_instance(2 + seed % 20, seed);
    const double r = rd(rng);
    const auto res = dominance_verify(inst, r);
    REQUIRE(res.passed);
    // Brute-force re-evaluation of both sides.
    double sx = 0.0;
    double sy = 0.0;
    for (double v : inst.x) sx += std::pow(v, r);
    for (double v : inst.y) sy += std::pow(v, r);
    REQUIRE(sx >= sy - 1e-10 * std::max(1.0, sy));
    REQUIRE(res.margin == doctest::Approx(sx - sy).epsilon(1e-9));
  }
}

}  // TEST_SUITE
