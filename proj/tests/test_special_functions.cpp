#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "scatter/special_functions.hpp"
#include "series_oracle.hpp"

using namespace scatter;

namespace {

double first_zero_of_j0_by_bisection() {
  double lo = 2.0, hi = 3.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (oracle::j(0, lo) * oracle::j(0, mid) <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("bessel_j limit values at zero") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(1, 0.0) == 0.0);
  CHECK(bessel_j(7, 0.0) == 0.0);
}

TEST_CASE("bessel_j vanishes at the first zero of J0") {
  const double zero = first_zero_of_j0_by_bisection();
  CHECK(std::abs(bessel_j(0, zero)) < 1e-12);
}

TEST_CASE("bessel_j and bessel_y match the high-precision series") {
  const int orders[] = {0, 1, 2, 5, 10, 25, 50, 100, 200};
  const double args[] = {0.05, 0.5, 1.0, 2.5, 7.3, 13.0, 22.2, 37.9, 50.0};
  for (int n : orders) {
    for (double x : args) {
      const double jref = oracle::j(n, x);
      if (std::abs(jref) > 1e-290) {
        CHECK_MESSAGE(std::abs(bessel_j(n, x) - jref) <= 1e-12 * std::abs(jref),
                      "J_" << n << "(" << x << ")");
      }
      const double yref = oracle::y(n, x);
      if (std::isfinite(yref) && std::abs(yref) < 1e290) {
        CHECK_MESSAGE(std::abs(bessel_y(n, x) - yref) <= 1e-12 * std::abs(yref),
                      "Y_" << n << "(" << x << ")");
      }
    }
  }
}

TEST_CASE("bessel_01 agrees with the sequence routines") {
  for (double x : {1e-6, 0.01, 0.3, 1.0, 4.0, 17.5, 49.0, 60.0}) {
    const Bessel01 b = bessel_01(x);
    CHECK(b.j0 == doctest::Approx(oracle::j(0, x)).epsilon(1e-12));
    CHECK(b.j1 == doctest::Approx(oracle::j(1, x)).epsilon(1e-12));
    CHECK(b.y0 == doctest::Approx(oracle::y(0, x)).epsilon(1e-12));
    CHECK(b.y1 == doctest::Approx(oracle::y(1, x)).epsilon(1e-12));
  }
}

TEST_CASE("hankel1 is J + iY") {
  const cdouble h = hankel1(0, 1.0);
  CHECK(std::abs(h - cdouble(bessel_j(0, 1.0), bessel_y(0, 1.0))) == 0.0);
}

TEST_CASE("Wronskian J0 Y0' - J0' Y0 = 2/(pi x) at x = 1") {
  const double x = 1.0;
  const double j0 = bessel_j(0, x), y0 = bessel_y(0, x);
  const double j0p = -bessel_j(1, x), y0p = -bessel_y(1, x);
  CHECK(std::abs(j0 * y0p - j0p * y0 - 2.0 / (std::numbers::pi * x)) < 1e-10);
  // Same identity from the high-precision series values.
  const double w = oracle::j(0, x) * -oracle::y(1, x) + oracle::j(1, x) * oracle::y(0, x);
  CHECK(std::abs(w - 2.0 / std::numbers::pi) < 1e-14);
}

TEST_CASE("Hankel three-term recurrence at n = 3, x = 2.5") {
  const double x = 2.5;
  const cdouble r = hankel1(2, x) + hankel1(4, x) - (6.0 / x) * hankel1(3, x);
  CHECK(std::abs(r) < 1e-10);
}

TEST_CASE("recurrence residual over n <= 50, x in [0.1, 60]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.1, 60.0);
  std::uniform_int_distribution<int> un(1, 49);
  for (int trial = 0; trial < 300; ++trial) {
    const double x = ux(rng);
    const int n = un(rng);
    const cdouble a = hankel1(n - 1, x), b = hankel1(n, x), c = hankel1(n + 1, x);
    const double scale = std::abs(a) + std::abs(c) + (2.0 * n / x) * std::abs(b);
    CHECK(std::abs(a + c - (2.0 * n / x) * b) <= 1e-10 * scale);
  }
}

TEST_CASE("symmetry for negative orders and |J_n| <= 1") {
  for (int n = 0; n <= 12; ++n) {
    for (double x : {0.4, 3.3, 19.0}) {
      const double s = (n % 2 == 0) ? 1.0 : -1.0;
      CHECK(bessel_j(-n, x) == doctest::Approx(s * bessel_j(n, x)));
      CHECK(bessel_y(-n, x) == doctest::Approx(s * bessel_y(n, x)));
      CHECK(std::abs(bessel_j(n, x)) <= 1.0);
    }
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_j(0, -1.0), std::domain_error);
  CHECK_THROWS_AS(bessel_y(0, 0.0), std::domain_error);
  CHECK_THROWS_AS(hankel1(1, 0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_j(201, 1.0), std::domain_error);
}
