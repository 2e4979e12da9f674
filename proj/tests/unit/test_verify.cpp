#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "sincpow/core_math.hpp"
#include "sincpow/dominance.hpp"
#include "sincpow/verify.hpp"
#include "json.hpp"

using namespace sincpow;
using namespace sincpow::verify;

TEST_SUITE("verify") {

TEST_CASE("GridSpec") {
  const auto pts = GridSpec{5}.points();
  REQUIRE(pts.size() == 5);
  CHECK(pts.front() == 0.0);
  CHECK(pts[2] == 0.5);
  CHECK(pts.back() == 1.0);
  CHECK_THROWS_AS(GridSpec{1}.points(), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{3, 1.0, 0.0}.points()), std::invalid_argument);
}

TEST_CASE("report serialization") {
  VerificationReport rep{"parseval", true, 1.5e-7, 0.25, 1001, 1e-10, ""};
  const auto j = nlohmann::json::parse(to_json_line(rep));
  CHECK(j["name"] == "parseval");
  CHECK(j["passed"] == true);
  CHECK(j["worst_margin"].get<double>() == 1.5e-7);
  CHECK(j["witness"].get<double>() == 0.25);
  CHECK(j["points_checked"].get<std::size_t>() == 1001);
  CHECK(to_text_line(rep).rfind("PASS parseval", 0) == 0);
  rep.passed = false;
  CHECK(to_text_line(rep).rfind("FAIL", 0) == 0);
}

TEST_CASE("verify_parseval") {
  const auto rep = verify_parseval(GridSpec{1001}, 1e-10);
  CHECK(rep.passed);
  CHECK(rep.points_checked == 1001);

  const std::vector<double> zero{0.0};
  const auto at_zero = verify_parseval(zero, 1e-10, EvalParams{1.0, 1e-6});
  CHECK(at_zero.passed);
  CHECK(std::abs(at_zero.worst_margin) < 1e-14);

  const std::vector<double> half{0.5};
  CHECK(verify_parseval(half, 1e-10, EvalParams{1.0, 1e-6}).passed);
  // 2 sum y_half(m) = 1 through the odd-square sum.
  CHECK(f_half_closed(1.0, 1e-12).contains(1.0));

  // A corrupted tolerance turns it red.
  const auto red = verify_parseval(half, -1.0, EvalParams{1.0, 1e-6});
  CHECK_FALSE(red.passed);
}

TEST_CASE("verify_s0_min") {
  const std::vector<double> half{0.5};
  const auto at_half = verify_s0_min(half);
  CHECK(at_half.passed);
  CHECK(std::abs(at_half.worst_margin) < 1e-15);
  const std::vector<double> zero{0.0};
  CHECK(verify_s0_min(zero).worst_margin == doctest::Approx(1.0 - 8.0 / (kPi * kPi)));

  const auto rep = verify_s0_min(GridSpec{100'000});
  CHECK(rep.passed);
  CHECK(rep.witness == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("verify_sm_max") {
  const std::vector<double> half{0.5};
  CHECK(std::abs(verify_sm_max(1, half).worst_margin) < 1e-16);
  const std::vector<double> zero{0.0};
  CHECK(verify_sm_max(1, zero).worst_margin == doctest::Approx(y_half(1)));
  CHECK_THROWS_AS(verify_sm_max(0, half), std::invalid_argument);

  for (std::int64_t m = 1; m <= 50; ++m) REQUIRE(verify_sm_max(m, GridSpec{10'000}).passed);
  const auto range = verify_sm_max_range(50, GridSpec{10'000});
  CHECK(range.passed);
  CHECK(range.points_checked == 50 * 10'000);
}

TEST_CASE("log-derivative suites") {
  const auto us = default_u_grid();
  REQUIRE(us.size() == 49);
  CHECK(us.front() == 0.01);
  CHECK(us.back() == 0.49);

  const std::vector<double> quarter{0.25};
  const auto one = verify_log_deriv_bound(1, quarter);
  CHECK(one.passed);
  CHECK(one.worst_margin == doctest::Approx(-4.1848022005446793094 + 5.6098262338205131179));

  const std::vector<double> edge{0.49};
  CHECK(verify_log_deriv_bound(1, edge).passed);

  // Margin at u = 1/4 grows with D: rational terms shrink.
  const double d100 = phi_log_deriv({0.25, 100.5});
  CHECK(log_deriv_upper_bound(0.25) - d100 > one.worst_margin);

  CHECK(verify_log_deriv_bound(100, us).passed);
  const auto fd = verify_log_deriv_fd(100, us);
  CHECK(fd.passed);
  CHECK(fd.worst_margin > 0.0);
}

TEST_CASE("truncation start and Y_N") {
  const double t = crossing_threshold();
  CHECK(t == doctest::Approx(0.5 * (y_half(0) + y_half(1))));
  const std::int64_t n0 = truncation_start();
  CHECK(y_tail(n0) < t);
  if (n0 > 0) CHECK(y_tail(n0 - 1) >= t);
  for (std::int64_t N = 0; N < 200; ++N) REQUIRE(y_tail(N + 1) < y_tail(N));
  CHECK(y_tail(1000) < 1e-3);
}

TEST_CASE("build_truncated_pair") {
  const std::int64_t n0 = truncation_start();
  for (std::int64_t N : {n0, n0 + 3, n0 + 40}) {
    const auto half = build_truncated_pair(0.5, N);
    CHECK(half.xs == half.ys);
    CHECK(half.xs.size() == static_cast<std::size_t>(N) + 2);
  }

  const auto pair = build_truncated_pair(0.3, 10);
  CHECK(pair.t == doctest::Approx(0.5 * (y_half(0) + y_half(1))));
  CHECK(dominance::check_one_crossing(pair.instance()).ok);
  double sx = 0.0;
  double sy = 0.0;
  for (double v : pair.xs) sx += v;
  for (double v : pair.ys) sy += v;
  CHECK(std::abs(sx - 1.0) <= 1e-10);
  CHECK(std::abs(sy - 1.0) <= 1e-10);

  // The r = 1 shortcut for the tail agrees with summing it out directly.
  double direct_x = 0.0;
  for (std::int64_t m = 2'000'000; m >= 11; --m) direct_x += s_m(m, 0.3);
  CHECK(pair.xs.back() == doctest::Approx(direct_x).epsilon(1e-5));
  CHECK(pair.xs.back() <= pair.ys.back());

  CHECK_THROWS_AS(build_truncated_pair(0.3, n0 - 1), std::invalid_argument);
}

TEST_CASE("property: truncated inequality converges as N grows") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> xd(0.0, 1.0);
  auto gap = [](const TruncatedPair& p, double r) {
    double g = 0.0;
    for (std::size_t k = 0; k < p.xs.size(); ++k) g += std::pow(p.xs[k], r) - std::pow(p.ys[k], r);
    return g;
  };
  for (int i = 0; i < 50; ++i) {
    const double x = xd(rng);
    for (double r : {1.5, 2.0, 5.0}) {
      for (std::int64_t N : {5, 20, 80}) {
        const auto a = build_truncated_pair(x, N);
        const auto b = build_truncated_pair(x, 10 * N);
        // Y_N <= sum_{m>N} 8/(pi^2 (2m+1)^2) <= 4/(pi^2 (2N+1)).
        const double analytic = 4.0 / (kPi * kPi * (2.0 * N + 1.0));
        REQUIRE(a.ys.back() <= analytic);
        REQUIRE(a.xs.back() <= a.ys.back() + 1e-15);
        const double tail_r = std::pow(a.xs.back(), r) + std::pow(a.ys.back(), r);
        REQUIRE(std::abs(gap(a, r) - gap(b, r)) <= tail_r + 1e-14);
        REQUIRE(gap(a, r) >= -1e-12);
      }
    }
  }
}

TEST_CASE("verify_proposition") {
  const auto r1 = verify_proposition(1.0, GridSpec{101}, 1e-8);
  REQUIRE(r1.size() == 2);
  CHECK(r1[0].passed);
  CHECK(r1[1].passed);

  const auto r2 = verify_proposition(2.0, GridSpec{1001}, 1e-8);
  CHECK(r2[0].passed);
  CHECK(r2[1].passed);
  CHECK(r2[0].points_checked == 1001);
  const auto half = f_r_certified(0.5, EvalParams{2.0, budget_tol(2.0)});
  CHECK(half.contains(1.0 / 3.0));

  const auto big = verify_proposition(std::pow(1.02, 256), GridSpec{101}, 1e-8);
  CHECK(big[0].passed);
  CHECK(big[1].passed);
}

TEST_CASE("verify_closed_form") {
  const std::vector<double> rs{1.0, 1.5, 2.0, 5.0, 10.0, 158.6};
  const auto rep = verify_closed_form(rs);
  CHECK(rep.passed);
  CHECK(rep.points_checked == rs.size());
}

TEST_CASE("verify_dominance_random") {
  const std::vector<double> rs{1.0, 1.5, 2.0, 4.0, 8.0};
  const auto rep = verify_dominance_random(200, rs);
  CHECK(rep.passed);
  CHECK(rep.points_checked == 200 * rs.size());
}

TEST_CASE("find_min") {
  CHECK(find_min(1.0, 1e-6) == 0.5);
  CHECK(find_min(2.0, 1e-6) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(std::abs(find_min(10.0, 1e-6) - 0.5) <= 1e-6);
  CHECK(std::abs(find_min(1.02, 1e-6) - 0.5) <= 1e-6);
  CHECK_THROWS_AS(find_min(0.9, 1e-6), std::invalid_argument);
}

TEST_CASE("property: find_min agrees with a brute-force grid scan") {
  constexpr int kPoints = 100'000;
  const double spacing = 1.0 / (kPoints - 1);
  for (double r : {1.5, 3.0, 20.0}) {
    double best = 1e300;
    double arg = 0.0;
    for (int k = 0; k < kPoints; ++k) {
      const double x = k * spacing;
      const double v = f_r_partial(x, r, 60);
      if (v < best) {
        best = v;
        arg = x;
      }
    }
    CHECK(std::abs(find_min(r, 1e-7) - arg) <= 2 * spacing);
  }
}

TEST_CASE("minimization objective tracks f_r - 1") {
  for (double x : {0.1, 0.3, 0.5}) {
    const double obj = minimization_objective(x, 1.2, 20000);
    const auto f = f_r_certified(x, EvalParams{1.2, 1e-6});
    CHECK(obj == doctest::Approx(f.value - 1.0).epsilon(1e-4));
  }
}

}  // TEST_SUITE
