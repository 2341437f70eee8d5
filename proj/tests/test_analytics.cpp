#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "accperc/analytics.hpp"

using namespace accperc;

TEST_CASE("critical points in closed form") {
  const double x1 = 1.0 - std::log(1.0 + std::sqrt(2.0));
  const double xh = 1.0 - 0.5 * std::log(2.0 + std::sqrt(5.0));
  CHECK(std::abs(critical_x(1.0).x_star - x1) < 1e-12);
  CHECK(std::abs(critical_x(0.5).x_star - xh) < 1e-12);
  CHECK(critical_x(1.0).x_star == doctest::Approx(0.11863).epsilon(1e-4));
  CHECK(critical_x(0.5).x_star == doctest::Approx(0.278182).epsilon(1e-6));
  const auto mid = critical_x(0.75);
  CHECK(mid.residual <= 1e-12);
  CHECK(mid.x_star > x1);
  CHECK(mid.x_star < xh);
}

TEST_CASE("alpha = 0 is the degenerate limit") {
  const auto c = critical_x(0.0);
  CHECK(c.degenerate);
  CHECK(c.x_star == 1.0);
  CHECK(critical_x(1e-6).x_star > 0.99);
  CHECK_THROWS_AS(critical_x(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(critical_x(1.5), std::invalid_argument);
}

TEST_CASE("critical curve decreases with residuals below 1e-12") {
  std::vector<double> grid;
  for (int i = 1; i <= 100; ++i) grid.push_back(i / 100.0);
  const auto curve = critical_curve(grid);
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(curve[i].residual <= 1e-12);
    CHECK_FALSE(curve[i].degenerate);
    if (i) CHECK(curve[i].x_star < curve[i - 1].x_star);
  }
}

TEST_CASE("shortest path expectation and its threshold") {
  CHECK(minimal_path_expectation(7, 0.0) == 7.0);
  for (int L : {2, 10, 100}) CHECK(minimal_path_expectation(L, x_c(L)) == doctest::Approx(1.0).epsilon(1e-12));
  for (int L : {2, 10, 100}) {
    double previous = INFINITY;
    for (int i = 0; i <= 100; ++i) {
      const double e = minimal_path_expectation(L, i / 100.0);
      CHECK(e < previous);
      previous = e;
    }
  }
  const double L = 1e6;
  CHECK(std::abs(x_c(1000000) * L / std::log(L) - 1.0) < 0.02);
  CHECK(x_c(1) == doctest::Approx(1.0 - std::exp(-1.0)));
}

TEST_CASE("averaged expectation identity") {
  for (int L = 1; L <= 100; ++L)
    for (double x : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const auto a = averaged_expectation(L, x);
      INFO("L=" << L << " x=" << x);
      CHECK(std::abs(a.exact_sum / a.closed_form - 1.0) <= 1e-10);
    }
  const auto at_one = averaged_expectation(9, 1.0);
  CHECK(at_one.closed_form == doctest::Approx(9.0 / 512.0));
  CHECK(at_one.exact_sum == doctest::Approx(9.0 / 512.0));
  const auto mid = averaged_expectation(30, 0.3);
  CHECK(std::abs(mid.exact_sum / mid.closed_form - 1.0) <= 1e-10);
}

TEST_CASE("averaged expectation grows with L only below 1 - ln 2") {
  const double threshold = 1.0 - std::log(2.0);
  CHECK(threshold == doctest::Approx(0.30685).epsilon(1e-5));
  for (double x : {threshold - 0.01, threshold + 0.01}) {
    const bool grows = averaged_expectation(400, x).log_closed_form > averaged_expectation(200, x).log_closed_form;
    CHECK(grows == (x < threshold));
  }
}

TEST_CASE("limit diagnostics") {
  const auto d = limit_diagnostic(400, 400, 0.5);
  CHECK(std::abs(d.upper_root - std::sinh(0.5)) < 0.03);
  CHECK(std::abs(d.lower_root - std::sinh(0.5)) < 0.03);
  CHECK(limit_diagnostic(50, 50, critical_x(1.0).x_star).limit == doctest::Approx(1.0).epsilon(1e-12));
  const double xh = critical_x(0.5).x_star;
  const auto half = limit_diagnostic(400, 200, xh);
  CHECK(half.limit == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(half.upper_root - 1.0) < 0.05);
  CHECK(std::abs(half.lower_root - 1.0) < 0.05);
  CHECK(half.lower_root <= half.upper_root);
}
