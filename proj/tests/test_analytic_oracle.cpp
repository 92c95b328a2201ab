#include <cmath>

#include "doctest.h"
#include "scatter/analytic_oracle.hpp"
#include "scatter/special_functions.hpp"

using namespace scatter;

TEST_CASE("no contrast gives vanishing coefficients") {
  for (int m = 0; m < 30; ++m) CHECK(std::abs(mode_coefficient(m, 1.0, Transmission{1.0, 1.0}, 3.0)) < 1e-15);
}

TEST_CASE("Dirichlet coefficients are bounded by one") {
  for (double k : {0.5, 3.0, 11.0}) {
    const auto tr = series_truncation(2.0, Dirichlet{}, k);
    for (int m = 0; m <= tr.m_max; ++m) CHECK(std::abs(mode_coefficient(m, 2.0, Dirichlet{}, k)) <= 1.0);
  }
}

TEST_CASE("coefficients are even in the mode index") {
  for (const BoundaryCondition& bc : {BoundaryCondition{Neumann{}}, BoundaryCondition{Transmission{0.64, 1.2}}}) {
    CHECK(std::abs(mode_coefficient(-3, 1.0, bc, 2.0) - mode_coefficient(3, 1.0, bc, 2.0)) == 0.0);
  }
}

TEST_CASE("large impedance approaches the Dirichlet limit") {
  for (int m = 0; m <= 10; ++m) {
    const cdouble d = mode_coefficient(m, 1.0, Dirichlet{}, 3.0);
    const cdouble z = mode_coefficient(m, 1.0, Impedance{1e6}, 3.0);
    CHECK(std::abs(z - d) < 1e-4 * std::abs(d));
  }
}

TEST_CASE("Neumann coefficient against the direct formula") {
  const double x = 2.7;
  const cdouble expect = -bessel_j_prime(4, x) / hankel1_prime(4, x);
  CHECK(std::abs(mode_coefficient(4, 1.0, Neumann{}, x) - expect) < 1e-15);
}

TEST_CASE("truncation is certified") {
  for (double R : {0.5, 1.0, 2.0}) {
    for (double k : {0.5, 5.0, 11.0}) {
      const auto tr = series_truncation(R, Transmission{0.64, 1.2}, k);
      CHECK(tr.m_max >= std::max(20, static_cast<int>(std::ceil(k * R)) + 15));
      CHECK(tr.tail_bound < 1e-13);
      const Vec2 d(1, 0);
      const auto a = series_farfield(R, Vec2::Zero(), Dirichlet{}, k, d, 64);
      const auto b = series_farfield(R, Vec2::Zero(), Dirichlet{}, k, d, 64,
                                     2 * series_truncation(R, Dirichlet{}, k).m_max);
      CHECK(sup_distance(a, b) < 1e-13);
    }
  }
}

TEST_CASE("off-center oracle is the phase-shifted centred oracle") {
  const double k = 3.0;
  const Vec2 c(0.5, -1.0), d(0.0, 1.0);
  const auto moved = series_farfield(1.0, c, Neumann{}, k, d, 32);
  const auto centred = series_farfield(1.0, Vec2::Zero(), Neumann{}, k, d, 32);
  const auto grid = FarFieldPattern::grid(32);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const cdouble phase = std::exp(cdouble(0, k * c.dot(d - grid[j])));
    CHECK(std::abs(moved.samples[j] - phase * centred.samples[j]) < 1e-14);
  }
}

TEST_CASE("oracle agrees with the solver on a shifted circle") {
  const Vec2 c(-0.7, 0.3);
  const PlaneWaveSuperposition w(5.0, {Vec2(1, 0), Vec2(0, -1)});
  const auto num = solve_far_field(BenchmarkCurve::circle(1.5, c), Impedance{2.0}, w, 64);
  CHECK(sup_distance(num, circle_oracle(1.5, c, Impedance{2.0}, w, 64)) < 1e-8);
}

TEST_CASE("oracle input validation") {
  CHECK_THROWS_AS(series_farfield(0.0, Vec2::Zero(), Dirichlet{}, 1.0, Vec2(1, 0), 16), std::invalid_argument);
  CHECK_THROWS_AS(series_farfield(1.0, Vec2::Zero(), Transmission{cdouble(1.0, 0.5), 1.0}, 1.0, Vec2(1, 0), 16),
                  std::invalid_argument);
}
