#include "scatter/nystrom_kernels.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "scatter/special_functions.hpp"

namespace scatter {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEuler = 0.57721566490153286061;
const cdouble kI(0.0, 1.0);

struct Entries {
  cdouble single_plain;  // S without the |gamma'(tau)| weight
  cdouble double_layer;
  cdouble adjoint_double;
};

// Kress splitting: kernel = K1 ln(4 sin^2((t-tau)/2)) + K2, discretized as
// R_{|i-j|} K1 + (pi/n) K2.
struct EntryContext {
  const BoundaryNodes& nodes;
  const std::vector<double>& weights;
  double k;
  double h;  // pi / n_q

  Entries operator()(int i, int j) const {
    const CurveJet& gi = nodes.jets[static_cast<std::size_t>(i)];
    const CurveJet& gj = nodes.jets[static_cast<std::size_t>(j)];
    const double rw = weights[static_cast<std::size_t>(std::abs(i - j))];
    const Vec2 ni(gi.d1.y(), -gi.d1.x());
    const Vec2 nj(gj.d1.y(), -gj.d1.x());
    Entries e;
    if (i == j) {
      const double m1 = -0.5 / kPi;
      const cdouble m2 = 0.5 * kI - (std::log(0.5 * k * gi.speed) + kEuler) / kPi;
      e.single_plain = rw * m1 + h * m2;
      const double l2 = nj.dot(gj.d2) / (2.0 * kPi * gj.speed * gj.speed);
      e.double_layer = h * l2;
      e.adjoint_double = h * l2;
      return e;
    }
    const Vec2 diff = gi.point - gj.point;
    const double r = diff.norm();
    const Bessel01 b = bessel_01(k * r);
    const cdouble h0(b.j0, b.y0);
    const cdouble h1(b.j1, b.y1);
    const double logw = std::log(4.0 * std::pow(std::sin(0.5 * (nodes.t[static_cast<std::size_t>(i)] -
                                                                  nodes.t[static_cast<std::size_t>(j)])),
                                                 2));
    {
      const cdouble full = 0.5 * kI * h0;
      const double k1 = -b.j0 / (2.0 * kPi);
      e.single_plain = rw * k1 + h * (full - k1 * logw);
    }
    {
      const double a = nj.dot(diff);
      const cdouble full = 0.5 * kI * k * a * h1 / r;
      const double k1 = -k * a * b.j1 / (2.0 * kPi * r);
      e.double_layer = rw * k1 + h * (full - k1 * logw);
    }
    {
      const double a = ni.dot(diff) * gj.speed / gi.speed;
      const cdouble full = -0.5 * kI * k * a * h1 / r;
      const double k1 = k * a * b.j1 / (2.0 * kPi * r);
      e.adjoint_double = rw * k1 + h * (full - k1 * logw);
    }
    return e;
  }
};

void fill_row(const EntryContext& ctx, int i, Eigen::MatrixXcd& plain, Eigen::MatrixXcd& dl,
              Eigen::MatrixXcd& adl) {
  const int n = ctx.nodes.size();
  for (int j = 0; j < n; ++j) {
    const Entries e = ctx(i, j);
    plain(i, j) = e.single_plain;
    dl(i, j) = e.double_layer;
    adl(i, j) = e.adjoint_double;
  }
}

}  // namespace

BoundaryNodes BoundaryNodes::sample(const Curve& curve, int n_q) {
  if (n_q < 2) throw std::invalid_argument("need n_q >= 2 quadrature half-nodes");
  BoundaryNodes nodes;
  nodes.n_q = n_q;
  const int n = 2 * n_q;
  nodes.t.resize(static_cast<std::size_t>(n));
  nodes.jets.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    nodes.t[static_cast<std::size_t>(i)] = kPi * i / n_q;
    nodes.jets.push_back(curve_jet(curve, nodes.t[static_cast<std::size_t>(i)]));
  }
  return nodes;
}

std::vector<double> log_quadrature_weights(int n_q) {
  const int n = 2 * n_q;
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    const double t = kPi * d / n_q;
    double sum = 0.0;
    for (int m = 1; m < n_q; ++m) sum += std::cos(m * t) / m;
    w[static_cast<std::size_t>(d)] =
        -2.0 * kPi / n_q * sum - kPi / (static_cast<double>(n_q) * n_q) * ((d % 2 == 0) ? 1.0 : -1.0);
  }
  return w;
}

Eigen::MatrixXd spectral_derivative(int n_q) {
  const int n = 2 * n_q;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double sgn = ((i - j) % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = 0.5 * sgn / std::tan(0.5 * kPi * (i - j) / n_q);
    }
  }
  return d;
}

LayerMatrices assemble_layers(const BoundaryNodes& nodes, double k, bool hypersingular,
                              Execution exec) {
  if (!(k > 0.0)) throw std::invalid_argument("assemble_layers: wavenumber must be positive");
  const int n = nodes.size();
  const auto weights = log_quadrature_weights(nodes.n_q);
  const EntryContext ctx{nodes, weights, k, kPi / nodes.n_q};

  Eigen::MatrixXcd plain(n, n);
  LayerMatrices out;
  out.double_layer.resize(n, n);
  out.adjoint_double.resize(n, n);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) fill_row(ctx, i, plain, out.double_layer, out.adjoint_double);
  } else {
    for (int i = 0; i < n; ++i) fill_row(ctx, i, plain, out.double_layer, out.adjoint_double);
  }

  Eigen::VectorXd speed(n);
  for (int i = 0; i < n; ++i) speed(i) = nodes.jets[static_cast<std::size_t>(i)].speed;
  out.single = plain * speed.asDiagonal();

  if (hypersingular) {
    // Maue: |gamma'(t)| T phi = d/dt S~ (d phi/dt) + k^2 S~[(n(t) . n(tau)) phi]
    Eigen::MatrixXd normals(n, 2);
    for (int i = 0; i < n; ++i) {
      const auto& g = nodes.jets[static_cast<std::size_t>(i)];
      normals(i, 0) = g.d1.y();
      normals(i, 1) = -g.d1.x();
    }
    const Eigen::MatrixXd nn = normals * normals.transpose();
    const Eigen::MatrixXcd d = spectral_derivative(nodes.n_q).cast<cdouble>();
    Eigen::MatrixXcd t = d * (plain * d);
    t += (k * k) * plain.cwiseProduct(nn.cast<cdouble>());
    out.hypersingular = speed.cwiseInverse().asDiagonal() * t;
  }
  return out;
}

FarFieldOperators far_field_operators(const BoundaryNodes& nodes, double k,
                                      std::span<const Vec2> directions, Execution exec) {
  const int n = nodes.size();
  const int m = static_cast<int>(directions.size());
  const cdouble gamma = std::exp(cdouble(0.0, kPi / 4.0)) / std::sqrt(8.0 * kPi * k);
  const double h = kPi / nodes.n_q;
  FarFieldOperators ops;
  ops.single.resize(m, n);
  ops.double_layer.resize(m, n);
  auto row = [&](int r) {
    const Vec2& xhat = directions[static_cast<std::size_t>(r)];
    for (int j = 0; j < n; ++j) {
      const CurveJet& g = nodes.jets[static_cast<std::size_t>(j)];
      const cdouble e = gamma * h * std::exp(cdouble(0.0, -k * xhat.dot(g.point)));
      const double xn = xhat.x() * g.d1.y() - xhat.y() * g.d1.x();
      ops.single(r, j) = e * g.speed;
      ops.double_layer(r, j) = e * cdouble(0.0, -k * xn);
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < m; ++r) row(r);
  } else {
    for (int r = 0; r < m; ++r) row(r);
  }
  return ops;
}

}  // namespace scatter
