#include "scatter/forward_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace scatter {
namespace {

constexpr double kPi = std::numbers::pi;
const cdouble kI(0.0, 1.0);

// Reciprocal condition estimate below which the system is treated as singular.
constexpr double kMinRcond = 1e-13;

bool needs_hypersingular(const BoundaryCondition& bc, bool with_traces) {
  return !std::holds_alternative<Dirichlet>(bc) || with_traces;
}

}  // namespace

std::vector<Vec2> FarFieldPattern::grid(int n_f) {
  if (n_f < 2) throw std::invalid_argument("far-field grid needs n_f >= 2");
  std::vector<Vec2> g;
  g.reserve(static_cast<std::size_t>(n_f));
  for (int j = 0; j < n_f; ++j) {
    const double th = 2.0 * kPi * j / n_f;
    g.emplace_back(std::cos(th), std::sin(th));
  }
  return g;
}

double sup_distance(const FarFieldPattern& a, const FarFieldPattern& b) {
  if (a.samples.size() != b.samples.size()) {
    throw std::invalid_argument("sup_distance: grid size mismatch");
  }
  double m = 0.0;
  for (std::size_t j = 0; j < a.samples.size(); ++j) {
    m = std::max(m, std::abs(a.samples[j] - b.samples[j]));
  }
  return m;
}

double interior_wavenumber(const Transmission& bc, double k) {
  if (bc.n.imag() != 0.0) {
    throw std::invalid_argument("absorbing interior media (Im n > 0) are not supported");
  }
  return k * std::sqrt(bc.n.real());
}

NystromSolver::NystromSolver(const Curve& curve, const BoundaryCondition& bc, double k, int n_q,
                             const SolverOptions& options, bool with_traces)
    : nodes_(BoundaryNodes::sample(curve, n_q)), bc_(bc), k_(k), traces_ready_(with_traces) {
  validate(bc_);
  if (!(k > 0.0)) throw std::invalid_argument("wavenumber must be positive");
  eta_ = options.coupling > 0.0 ? options.coupling
                                : (std::holds_alternative<Dirichlet>(bc_) ? k : 1.0);
  const int n = nodes_.size();
  const auto id = Eigen::MatrixXcd::Identity(n, n);
  outer_ = assemble_layers(nodes_, k, needs_hypersingular(bc_, with_traces), options.execution);
  diff_ = spectral_derivative(n_q);

  Eigen::MatrixXcd a;
  if (std::holds_alternative<Dirichlet>(bc_)) {
    a = id + outer_.double_layer - kI * eta_ * outer_.single;
  } else if (std::holds_alternative<Neumann>(bc_)) {
    a = -id + outer_.adjoint_double + kI * eta_ * outer_.hypersingular;
  } else if (const auto* imp = std::get_if<Impedance>(&bc_)) {
    a = -id + outer_.adjoint_double + kI * eta_ * outer_.hypersingular +
        imp->mu * (outer_.single + kI * eta_ * (outer_.double_layer + id));
  } else {
    const auto& tr = std::get<Transmission>(bc_);
    const double lam = tr.lambda;
    inner_ = assemble_layers(nodes_, interior_wavenumber(tr, k), true, options.execution);
    a.resize(2 * n, 2 * n);
    a.topLeftCorner(n, n) = outer_.single - inner_.single;
    a.topRightCorner(n, n) =
        (1.0 + 1.0 / lam) * id + outer_.double_layer - inner_.double_layer / lam;
    a.bottomLeftCorner(n, n) =
        -(1.0 + lam) * id + outer_.adjoint_double - lam * inner_.adjoint_double;
    a.bottomRightCorner(n, n) = outer_.hypersingular - inner_.hypersingular;
  }
  lu_.compute(a);
  const double rc = lu_.rcond();
  if (!(rc > kMinRcond)) {
    throw SingularSystemError("Nystrom system is numerically singular (rcond " +
                              std::to_string(rc) + ") at k = " + std::to_string(k));
  }
}

Eigen::VectorXcd NystromSolver::incident_data(const PlaneWaveSuperposition& w) const {
  const int n = nodes_.size();
  const bool pair = is_transmission(bc_);
  Eigen::VectorXcd f(pair ? 2 * n : n);
  for (int i = 0; i < n; ++i) {
    const TraceDatum d = trace_data(w, nodes_.jets[static_cast<std::size_t>(i)], bc_);
    f(i) = d.first;
    if (pair) f(n + i) = d.second;
  }
  return f;
}

Eigen::MatrixXcd NystromSolver::solve(const Eigen::MatrixXcd& data) const {
  if (data.rows() != lu_.rows()) throw std::invalid_argument("solve: data size mismatch");
  return lu_.solve(2.0 * data);
}

Eigen::MatrixXcd NystromSolver::far_field(const Eigen::MatrixXcd& density,
                                          const std::vector<Vec2>& directions) const {
  const auto ops = far_field_operators(nodes_, k_, directions);
  const int n = nodes_.size();
  if (std::holds_alternative<Dirichlet>(bc_)) {
    return ops.double_layer * density - kI * eta_ * (ops.single * density);
  }
  if (is_transmission(bc_)) {
    return ops.single * density.topRows(n) + ops.double_layer * density.bottomRows(n);
  }
  return ops.single * density + kI * eta_ * (ops.double_layer * density);
}

BoundaryTraces NystromSolver::traces(const Eigen::VectorXcd& density,
                                     const PlaneWaveSuperposition& w) const {
  if (!traces_ready_) throw std::logic_error("solver assembled without trace operators");
  const int n = nodes_.size();
  Eigen::VectorXcd ui(n), dui(n);
  for (int i = 0; i < n; ++i) {
    const CurveJet& g = nodes_.jets[static_cast<std::size_t>(i)];
    ui(i) = w.value(g.point);
    const Eigen::Vector2cd grad = w.gradient(g.point);
    dui(i) = grad(0) * g.normal.x() + grad(1) * g.normal.y();
  }
  BoundaryTraces tr;
  const auto& o = outer_;
  if (std::holds_alternative<Dirichlet>(bc_)) {
    const Eigen::VectorXcd& phi = density;
    tr.value = ui + 0.5 * (o.double_layer * phi + phi - kI * eta_ * (o.single * phi));
    tr.normal = dui + 0.5 * (o.hypersingular * phi - kI * eta_ * (o.adjoint_double * phi - phi));
  } else if (is_transmission(bc_)) {
    const Eigen::VectorXcd phi = density.head(n);
    const Eigen::VectorXcd psi = density.tail(n);
    const double lam = std::get<Transmission>(bc_).lambda;
    tr.value = ui + 0.5 * (o.single * phi + o.double_layer * psi + psi);
    tr.normal = dui + 0.5 * (o.adjoint_double * phi - phi + o.hypersingular * psi);
    tr.interior_normal = 0.5 * (inner_.adjoint_double * phi + phi) +
                         (0.5 / lam) * (inner_.hypersingular * psi);
  } else {
    const Eigen::VectorXcd& phi = density;
    tr.value = ui + 0.5 * (o.single * phi + kI * eta_ * (o.double_layer * phi + phi));
    tr.normal = dui + 0.5 * (o.adjoint_double * phi - phi + kI * eta_ * (o.hypersingular * phi));
  }
  tr.tangential = diff_.cast<cdouble>() * tr.value;
  return tr;
}

FarFieldPattern solve_far_field(const Curve& curve, const BoundaryCondition& bc,
                                const PlaneWaveSuperposition& w, int n_f,
                                const SolverOptions& options, int* used_n_q) {
  const auto dirs = FarFieldPattern::grid(n_f);
  auto at = [&](int n_q) {
    const NystromSolver solver(curve, bc, w.wavenumber(), n_q, options, false);
    const Eigen::MatrixXcd dens = solver.solve(solver.incident_data(w));
    const Eigen::VectorXcd ff = solver.far_field(dens, dirs).col(0);
    FarFieldPattern p;
    p.k = w.wavenumber();
    p.incident = w.directions();
    p.samples.assign(ff.data(), ff.data() + ff.size());
    return p;
  };
  int n_q = options.n_q;
  FarFieldPattern p = at(n_q);
  while (options.adaptive && 2 * n_q <= options.max_n_q) {
    FarFieldPattern finer = at(2 * n_q);
    n_q *= 2;
    const double change = sup_distance(finer, p);
    p = std::move(finer);
    if (change < options.tolerance) break;
  }
  if (used_n_q) *used_n_q = n_q;
  return p;
}

FarFieldPattern solve_exterior(const Curve& curve, const BoundaryCondition& bc,
                               const PlaneWaveSuperposition& w, int n_f,
                               const SolverOptions& options) {
  if (is_transmission(bc)) throw std::invalid_argument("solve_exterior: use solve_transmission");
  return solve_far_field(curve, bc, w, n_f, options);
}

FarFieldPattern solve_transmission(const Curve& curve, const Transmission& bc,
                                   const PlaneWaveSuperposition& w, int n_f,
                                   const SolverOptions& options) {
  return solve_far_field(curve, bc, w, n_f, options);
}

double optical_theorem_defect(const Curve& curve, const BoundaryCondition& bc, double k,
                              const Vec2& d, int n_f, const SolverOptions& options) {
  const PlaneWaveSuperposition w(k, {d});
  int n_q = options.n_q;
  const FarFieldPattern p = solve_far_field(curve, bc, w, n_f, options, &n_q);
  double energy = 0.0;
  for (const auto& v : p.samples) energy += std::norm(v);
  energy *= 2.0 * kPi / n_f;
  const NystromSolver solver(curve, bc, k, n_q, options, false);
  const cdouble forward = solver.far_field(solver.solve(solver.incident_data(w)), {d})(0, 0);
  const double predicted = -std::sqrt(8.0 * kPi / k) * std::real(std::exp(kI * (kPi / 4.0)) * forward);
  return std::abs(energy - predicted);
}

}  // namespace scatter
