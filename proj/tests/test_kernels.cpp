#include <cmath>
#include <numbers>

#include "doctest.h"
#include "scatter/nystrom_kernels.hpp"
#include "scatter/special_functions.hpp"

using namespace scatter;
using std::numbers::pi;

namespace {

const cdouble I(0.0, 1.0);

Eigen::VectorXcd mode(const BoundaryNodes& nodes, int m) {
  Eigen::VectorXcd v(nodes.size());
  for (int j = 0; j < nodes.size(); ++j) v(j) = std::exp(I * (m * nodes.t[static_cast<std::size_t>(j)]));
  return v;
}

double rel(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) { return (a - b).norm() / b.norm(); }

}  // namespace

TEST_CASE("log weights integrate cos(m t) exactly") {
  const int n_q = 16;
  const auto w = log_quadrature_weights(n_q);
  for (int m = 0; m < n_q; ++m) {
    for (int i : {0, 5, 17}) {
      double s = 0.0;
      for (int j = 0; j < 2 * n_q; ++j) s += w[static_cast<std::size_t>(std::abs(i - j))] * std::cos(m * pi * j / n_q);
      const double expect = m == 0 ? 0.0 : -2.0 * pi / m * std::cos(m * pi * i / n_q);
      CHECK(s == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("spectral derivative is exact on low modes") {
  const int n_q = 12;
  const Eigen::MatrixXd d = spectral_derivative(n_q);
  for (int m = 1; m < n_q; ++m) {
    Eigen::VectorXd s(2 * n_q), c(2 * n_q);
    for (int j = 0; j < 2 * n_q; ++j) {
      s(j) = std::sin(m * pi * j / n_q);
      c(j) = m * std::cos(m * pi * j / n_q);
    }
    CHECK((d * s - c).norm() < 1e-11 * c.norm());
  }
  CHECK((d * Eigen::VectorXd::Ones(2 * n_q)).norm() < 1e-12);
}

TEST_CASE("layer operators on a circle have the Bessel eigenvalues") {
  const double k = 2.0, R = 1.3, x = k * R;
  const auto nodes = BoundaryNodes::sample(BenchmarkCurve::circle(R, Vec2(0.4, -0.2)), 32);
  const auto ops = assemble_layers(nodes, k, true);
  for (int m = 0; m <= 6; ++m) {
    const auto v = mode(nodes, m);
    const double j = bessel_j(m, x), jp = bessel_j_prime(m, x);
    const cdouble h = hankel1(m, x), hp = hankel1_prime(m, x);
    CHECK(rel(ops.single * v, (I * pi * R * j * h) * v) < 1e-12);
    CHECK(rel(ops.double_layer * v, (I * pi * x * jp * h - 1.0) * v) < 1e-12);
    CHECK(rel(ops.adjoint_double * v, (I * pi * x * jp * h - 1.0) * v) < 1e-12);
    CHECK(rel(ops.hypersingular * v, (I * pi * k * x * jp * hp) * v) < 1e-11);
  }
}

TEST_CASE("Green's identities for a radiating field on the kite") {
  const double k = 3.0;
  const Vec2 z(-0.2, 0.3);  // source inside the kite
  const auto nodes = BoundaryNodes::sample(BenchmarkCurve::kite(), 64);
  const auto ops = assemble_layers(nodes, k, true);
  const int n = nodes.size();
  Eigen::VectorXcd v(n), dv(n);
  for (int i = 0; i < n; ++i) {
    const auto& g = nodes.jets[static_cast<std::size_t>(i)];
    const Vec2 r = g.point - z;
    const double d = r.norm();
    v(i) = hankel1(0, k * d);
    dv(i) = -k * hankel1(1, k * d) * r.dot(g.normal) / d;
  }
  // exterior traces of v = DL v - SL dv
  CHECK(rel(ops.single * dv, ops.double_layer * v - v) < 1e-10);
  CHECK(rel(ops.hypersingular * v, dv + ops.adjoint_double * dv) < 1e-9);
}

TEST_CASE("far-field operators reproduce a point source") {
  const double k = 2.0;
  const Vec2 z(0.1, -0.2);
  const auto nodes = BoundaryNodes::sample(BenchmarkCurve::apple(), 48);
  const auto ops = assemble_layers(nodes, k, false);
  // the field Phi(x, z) has far field gamma exp(-i k xhat.z); its traces come
  // from the exterior representation with the Dirichlet combined density.
  const int n = nodes.size();
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = 0.25 * I * hankel1(0, k * (nodes.jets[static_cast<std::size_t>(i)].point - z).norm());
  const Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(n, n) + ops.double_layer - I * k * ops.single;
  const Eigen::VectorXcd phi = a.partialPivLu().solve(2.0 * v);
  std::vector<Vec2> dirs;
  for (int j = 0; j < 8; ++j) dirs.emplace_back(std::cos(j * 0.7), std::sin(j * 0.7));
  const auto ff = far_field_operators(nodes, k, dirs);
  const Eigen::VectorXcd u = ff.double_layer * phi - I * k * (ff.single * phi);
  const cdouble gamma = std::exp(I * (pi / 4)) / std::sqrt(8 * pi * k);
  for (int j = 0; j < 8; ++j) {
    CHECK(std::abs(u(j) - gamma * std::exp(-I * k * dirs[static_cast<std::size_t>(j)].dot(z))) < 1e-11);
  }
}

TEST_CASE("serial and parallel assembly agree exactly") {
  const auto nodes = BoundaryNodes::sample(BenchmarkCurve::rounded_triangle(), 40);
  const auto a = assemble_layers(nodes, 5.0, true, Execution::Serial);
  const auto b = assemble_layers(nodes, 5.0, true, Execution::Parallel);
  CHECK(a.single == b.single);
  CHECK(a.double_layer == b.double_layer);
  CHECK(a.adjoint_double == b.adjoint_double);
  CHECK(a.hypersingular == b.hypersingular);
  const auto dirs = std::vector<Vec2>{Vec2(1, 0), Vec2(0, 1), Vec2(-0.6, 0.8)};
  const auto fa = far_field_operators(nodes, 5.0, dirs, Execution::Serial);
  const auto fb = far_field_operators(nodes, 5.0, dirs, Execution::Parallel);
  CHECK(fa.single == fb.single);
  CHECK(fa.double_layer == fb.double_layer);
}

TEST_CASE("kernel input validation") {
  CHECK_THROWS_AS(BoundaryNodes::sample(BenchmarkCurve::kite(), 1), std::invalid_argument);
  const auto nodes = BoundaryNodes::sample(BenchmarkCurve::kite(), 8);
  CHECK_THROWS_AS(assemble_layers(nodes, 0.0, false), std::invalid_argument);
  CHECK(assemble_layers(nodes, 1.0, false).hypersingular.size() == 0);
}
