#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "scatter/analytic_oracle.hpp"
#include "scatter/forward_solver.hpp"

using namespace scatter;
using std::numbers::pi;

namespace {

const std::vector<BoundaryCondition> kConditions{Dirichlet{}, Neumann{}, Impedance{2.0},
                                                 Transmission{0.64, 1.2}};

SolverOptions fixed(int n_q) {
  SolverOptions o;
  o.n_q = n_q;
  o.adaptive = false;
  return o;
}

cdouble far_at(const Curve& c, const BoundaryCondition& bc, double k, const Vec2& d, const Vec2& xhat) {
  const NystromSolver s(c, bc, k, 96, fixed(96), false);
  const PlaneWaveSuperposition w(k, {d});
  return s.far_field(s.solve(s.incident_data(w)), {xhat})(0, 0);
}

}  // namespace

TEST_CASE("circle far fields match the series for every condition") {
  for (const auto& bc : kConditions) {
    for (double k : {1.0, 7.0}) {
      CAPTURE(bc_name(bc));
      CAPTURE(k);
      const Vec2 c(0.2, -0.4);
      const PlaneWaveSuperposition w(k, {Vec2(0.6, 0.8)});
      const auto num = solve_far_field(BenchmarkCurve::circle(1.0, c), bc, w, 64);
      const auto ref = circle_oracle(1.0, c, bc, w, 64);
      CHECK(sup_distance(num, ref) < 1e-8);
    }
  }
}

TEST_CASE("translation multiplies the far field by a phase") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  const double k = 1.0;
  const Vec2 d(1, 0);
  const PlaneWaveSuperposition w(k, {d});
  const Curve apple = BenchmarkCurve::apple();
  const auto base = solve_far_field(apple, Dirichlet{}, w, 64);
  const auto grid = FarFieldPattern::grid(64);
  for (int trial = 0; trial < 3; ++trial) {
    const Vec2 ell(u(rng), u(rng));
    const auto moved = solve_far_field(translated(apple, ell), Dirichlet{}, w, 64);
    double err = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const cdouble phase = std::exp(cdouble(0, k * ell.dot(d - grid[j])));
      err = std::max(err, std::abs(moved.samples[j] - phase * base.samples[j]));
    }
    CHECK(err < 1e-7);
  }
}

TEST_CASE("far-field reciprocity on the kite") {
  const Vec2 d(std::cos(0.3), std::sin(0.3));
  const Vec2 xhat(std::cos(2.1), std::sin(2.1));
  for (const auto& bc : kConditions) {
    CAPTURE(bc_name(bc));
    const cdouble a = far_at(BenchmarkCurve::kite(), bc, 3.0, d, xhat);
    const cdouble b = far_at(BenchmarkCurve::kite(), bc, 3.0, -xhat, -d);
    CHECK(std::abs(a - b) < 1e-9 * std::abs(a));
  }
}

TEST_CASE("superposition is linear in the incident waves") {
  const double k = 5.0;
  const Vec2 d1(1, 0), d2(0, 1);
  for (const auto& bc : kConditions) {
    const NystromSolver s(BenchmarkCurve::rounded_triangle(), bc, k, 96, fixed(96), false);
    const auto dirs = FarFieldPattern::grid(32);
    auto far = [&](const PlaneWaveSuperposition& w) { return s.far_field(s.solve(s.incident_data(w)), dirs); };
    const Eigen::MatrixXcd both = far(PlaneWaveSuperposition(k, {d1, d2}));
    const Eigen::MatrixXcd sum = far(PlaneWaveSuperposition(k, {d1})) + far(PlaneWaveSuperposition(k, {d2}));
    CHECK((both - sum).norm() < 1e-12 * sum.norm());
  }
}

TEST_CASE("energy balance: optical theorem") {
  for (const auto& bc : kConditions) {
    CAPTURE(bc_name(bc));
    CHECK(optical_theorem_defect(BenchmarkCurve::kite(), bc, 3.0, Vec2(0, 1), 256) < 1e-8);
  }
}

TEST_CASE("spectral convergence at the top frequency") {
  const double k = 11.0;
  const PlaneWaveSuperposition w(k, {Vec2(1, 0)});
  for (const auto& bc : kConditions) {
    CAPTURE(bc_name(bc));
    const Curve c = BenchmarkCurve::apple();
    const auto a = solve_far_field(c, bc, w, 64, fixed(64));
    const auto b = solve_far_field(c, bc, w, 64, fixed(128));
    const auto r = solve_far_field(c, bc, w, 64, fixed(256));
    CHECK(sup_distance(b, r) < 1e-9);
    CHECK(sup_distance(b, r) < sup_distance(a, r));
  }
}

TEST_CASE("no contrast means no scattering") {
  const PlaneWaveSuperposition w(3.0, {Vec2(1, 0)});
  const auto p = solve_far_field(BenchmarkCurve::kite(), Transmission{1.0, 1.0}, w, 32);
  for (const auto& v : p.samples) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("serial and parallel solves agree") {
  SolverOptions a = fixed(64), b = fixed(64);
  a.execution = Execution::Serial;
  b.execution = Execution::Parallel;
  const PlaneWaveSuperposition w(5.0, {Vec2(1, 0), Vec2(0, -1)});
  const auto pa = solve_far_field(BenchmarkCurve::kite(), Neumann{}, w, 32, a);
  const auto pb = solve_far_field(BenchmarkCurve::kite(), Neumann{}, w, 32, b);
  CHECK(sup_distance(pa, pb) < 1e-14);
}

TEST_CASE("boundary traces satisfy the boundary condition") {
  const double k = 3.0;
  const PlaneWaveSuperposition w(k, {Vec2(1, 0), Vec2(0, 1)});
  const Curve c = BenchmarkCurve::kite();
  {
    const NystromSolver s(c, Dirichlet{}, k, 64, fixed(64));
    const auto tr = s.traces(s.solve(s.incident_data(w)).col(0), w);
    CHECK(tr.value.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(tr.tangential.cwiseAbs().maxCoeff() < 1e-8);
  }
  {
    const NystromSolver s(c, Neumann{}, k, 64, fixed(64));
    const auto tr = s.traces(s.solve(s.incident_data(w)).col(0), w);
    CHECK(tr.normal.cwiseAbs().maxCoeff() < 1e-8);
  }
  {
    const NystromSolver s(c, Impedance{2.0}, k, 64, fixed(64));
    const auto tr = s.traces(s.solve(s.incident_data(w)).col(0), w);
    CHECK((tr.normal + 2.0 * tr.value).cwiseAbs().maxCoeff() < 1e-8);
  }
  {
    const double lambda = 1.2;
    const NystromSolver s(c, Transmission{0.64, lambda}, k, 64, fixed(64));
    const auto tr = s.traces(s.solve(s.incident_data(w)).col(0), w);
    CHECK((tr.normal - lambda * tr.interior_normal).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("solver input validation") {
  const PlaneWaveSuperposition w(1.0, {Vec2(1, 0)});
  CHECK_THROWS_AS(solve_exterior(BenchmarkCurve::kite(), Transmission{}, w, 16), std::invalid_argument);
  CHECK_THROWS_AS(solve_far_field(BenchmarkCurve::kite(), Transmission{cdouble(0.64, 0.1), 1.2}, w, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(NystromSolver(BenchmarkCurve::kite(), Dirichlet{}, -1.0, 16), std::invalid_argument);
  CHECK_THROWS_AS(FarFieldPattern::grid(1), std::invalid_argument);
  const NystromSolver s(BenchmarkCurve::kite(), Dirichlet{}, 1.0, 16, fixed(16), false);
  CHECK_THROWS_AS(s.traces(s.solve(s.incident_data(w)).col(0), w), std::logic_error);
}
