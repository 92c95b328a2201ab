#include "scatter/frechet.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

namespace scatter {
namespace {

// (1/|gamma'|) d/dt [ g (1/|gamma'|) du/dt ] as a matrix acting on g.
Eigen::MatrixXcd tangential_divergence(const NystromSolver& solver, const Eigen::VectorXcd& du) {
  const auto& nodes = solver.nodes();
  const int n = nodes.size();
  Eigen::VectorXd inv_speed(n);
  for (int i = 0; i < n; ++i) inv_speed(i) = 1.0 / nodes.jets[static_cast<std::size_t>(i)].speed;
  const Eigen::VectorXcd flux = du.cwiseProduct(inv_speed.cast<cdouble>());
  return inv_speed.asDiagonal() * solver.derivative_matrix().cast<cdouble>() * flux.asDiagonal();
}

// Normal components of the unit basis perturbations, ordered like
// IterateState::parameters() without the lambda slot.
Eigen::MatrixXd basis_normals(const BoundaryNodes& nodes, int order) {
  const int n = nodes.size();
  Eigen::MatrixXd h(n, 2 * order + 3);
  for (int i = 0; i < n; ++i) {
    const double t = nodes.t[static_cast<std::size_t>(i)];
    const Vec2& nu = nodes.jets[static_cast<std::size_t>(i)].normal;
    const double radial = std::cos(t) * nu.x() + std::sin(t) * nu.y();
    h(i, 0) = nu.x();
    h(i, 1) = nu.y();
    h(i, 2) = radial;
    for (int l = 1; l <= order; ++l) {
      h(i, 2 + l) = std::cos(l * t) * radial;
      h(i, 2 + order + l) = std::sin(l * t) * radial;
    }
  }
  return h;
}

FarFieldPattern single_derivative(const Curve& curve, const BoundaryCondition& bc, double k,
                                  const PlaneWaveSuperposition& w, const BoundaryPerturbation& h,
                                  int n_f, int n_q) {
  SolverOptions opts;
  opts.adaptive = false;
  const NystromSolver solver(curve, bc, k, n_q, opts, true);
  const ForwardSnapshot snap(solver, w, n_f);
  const Eigen::VectorXd hn = normal_component(solver.nodes(), h);
  const Eigen::VectorXd dl = Eigen::VectorXd::Constant(1, h.dlambda);
  const Eigen::VectorXcd d = snap.derivative(hn, dl).col(0);
  FarFieldPattern p;
  p.k = k;
  p.incident = w.directions();
  p.samples.assign(d.data(), d.data() + d.size());
  return p;
}

}  // namespace

int unknown_count(int order, bool with_lambda) { return 2 * order + 3 + (with_lambda ? 1 : 0); }

Eigen::VectorXd IterateState::parameters(bool with_lambda) const {
  const int m = order();
  Eigen::VectorXd p(unknown_count(m, with_lambda));
  p(0) = curve.center.x();
  p(1) = curve.center.y();
  for (int i = 0; i < 2 * m + 1; ++i) p(2 + i) = curve.radial[static_cast<std::size_t>(i)];
  if (with_lambda) p(2 * m + 3) = lambda;
  return p;
}

IterateState IterateState::advanced(const Eigen::VectorXd& step, double scale) const {
  const int m = order();
  const int base = unknown_count(m, false);
  if (step.size() != base && step.size() != base + 1) {
    throw std::invalid_argument("IterateState::advanced: step size does not match the order");
  }
  IterateState out = *this;
  out.curve.center += scale * step.head<2>();
  for (int i = 0; i < 2 * m + 1; ++i) out.curve.radial[static_cast<std::size_t>(i)] += scale * step(2 + i);
  if (step.size() == base + 1) out.lambda += scale * step(base);
  return out;
}

BoundaryCondition condition_at(const BoundaryCondition& bc, const IterateState& state) {
  if (const auto* tr = std::get_if<Transmission>(&bc)) {
    return Transmission{tr->n, state.lambda};
  }
  return bc;
}

ForwardSnapshot::ForwardSnapshot(const NystromSolver& solver, const PlaneWaveSuperposition& w,
                                 int n_f)
    : solver_(&solver), grid_(FarFieldPattern::grid(n_f)) {
  const Eigen::VectorXcd density = solver.solve(solver.incident_data(w)).col(0);
  traces_ = solver.traces(density, w);
  far_ = solver.far_field(density, grid_).col(0);
}

Eigen::MatrixXcd ForwardSnapshot::derivative(const Eigen::MatrixXd& h_normal,
                                             const Eigen::VectorXd& dlambda) const {
  const NystromSolver& s = *solver_;
  const int n = s.nodes().size();
  if (h_normal.rows() != n) throw std::invalid_argument("derivative: h_normal has wrong row count");
  const double k = s.wavenumber();
  const Eigen::MatrixXcd h = h_normal.cast<cdouble>();
  const auto& tr = traces_;
  Eigen::MatrixXcd rhs;
  const BoundaryCondition& bc = s.condition();
  if (std::holds_alternative<Dirichlet>(bc)) {
    rhs = (-tr.normal).asDiagonal() * h;
  } else if (std::holds_alternative<Neumann>(bc)) {
    rhs = (k * k) * (tr.value.asDiagonal() * h) + tangential_divergence(s, tr.tangential) * h;
  } else if (const auto* t = std::get_if<Transmission>(&bc)) {
    if (dlambda.size() != h_normal.cols()) {
      throw std::invalid_argument("derivative: one lambda increment per column expected");
    }
    const double lam = t->lambda;
    const double ki = interior_wavenumber(*t, k);
    rhs.resize(2 * n, h.cols());
    const Eigen::VectorXcd jump = tr.normal - tr.interior_normal;
    rhs.topRows(n) = (-jump).asDiagonal() * h;
    rhs.bottomRows(n) = (k * k - lam * ki * ki) * (tr.value.asDiagonal() * h) +
                        (1.0 - lam) * (tangential_divergence(s, tr.tangential) * h);
    rhs.bottomRows(n) += (tr.normal / lam) * dlambda.transpose().cast<cdouble>();
  } else {
    throw std::invalid_argument("no shape derivative is available for the impedance condition");
  }
  return s.far_field(s.solve(rhs), grid_);
}

Eigen::VectorXd normal_component(const BoundaryNodes& nodes, const BoundaryPerturbation& h) {
  Eigen::VectorXd out(nodes.size());
  for (int i = 0; i < nodes.size(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    out(i) = h.value(nodes.t[idx]).dot(nodes.jets[idx].normal);
  }
  return out;
}

FarFieldPattern derivative_farfield_dirichlet(const Curve& curve, double k,
                                              const PlaneWaveSuperposition& w,
                                              const BoundaryPerturbation& h, int n_f, int n_q) {
  return single_derivative(curve, Dirichlet{}, k, w, h, n_f, n_q);
}

FarFieldPattern derivative_farfield_neumann(const Curve& curve, double k,
                                            const PlaneWaveSuperposition& w,
                                            const BoundaryPerturbation& h, int n_f, int n_q) {
  return single_derivative(curve, Neumann{}, k, w, h, n_f, n_q);
}

FarFieldPattern derivative_farfield_transmission(const Curve& curve, const Transmission& bc,
                                                 double k, const PlaneWaveSuperposition& w,
                                                 const BoundaryPerturbation& h, int n_f, int n_q) {
  return single_derivative(curve, bc, k, w, h, n_f, n_q);
}

std::vector<double> phaseless_derivative(const FarFieldPattern& u, const FarFieldPattern& du) {
  if (u.samples.size() != du.samples.size()) {
    throw std::invalid_argument("phaseless_derivative: grid size mismatch");
  }
  std::vector<double> out(u.samples.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = 2.0 * std::real(std::conj(u.samples[j]) * du.samples[j]);
  }
  return out;
}

LinearizedModel linearize(const IterateState& state, const BoundaryCondition& bc, double k,
                          const std::vector<Incidence>& incidences, const JacobianOptions& opt,
                          bool with_jacobian) {
  if (incidences.empty()) throw std::invalid_argument("linearize: no incidences");
  const bool with_lambda = is_transmission(bc);
  const BoundaryCondition bc_s = condition_at(bc, state);
  SolverOptions so;
  so.adaptive = false;
  so.execution = opt.execution;
  const NystromSolver solver(state.curve, bc_s, k, opt.n_q, so, with_jacobian);

  const int n_f = opt.n_f;
  const int n_inc = static_cast<int>(incidences.size());
  const int cols = unknown_count(state.order(), with_lambda);
  LinearizedModel out;
  out.intensities.resize(static_cast<Eigen::Index>(n_inc) * n_f);
  if (with_jacobian) out.jacobian.resize(out.intensities.size(), cols);

  Eigen::MatrixXd h;
  Eigen::VectorXd dl = Eigen::VectorXd::Zero(cols);
  if (with_jacobian) {
    h = Eigen::MatrixXd::Zero(solver.nodes().size(), cols);
    h.leftCols(cols - (with_lambda ? 1 : 0)) = basis_normals(solver.nodes(), state.order());
    if (with_lambda) dl(cols - 1) = 1.0;
  }

  const auto grid = FarFieldPattern::grid(n_f);
  std::exception_ptr failure;
  auto work = [&](int l) {
    try {
      const PlaneWaveSuperposition w(k, incidences[static_cast<std::size_t>(l)]);
      if (!with_jacobian) {
        const auto dens = solver.solve(solver.incident_data(w));
        out.intensities.segment(static_cast<Eigen::Index>(l) * n_f, n_f) =
            solver.far_field(dens, grid).col(0).cwiseAbs2();
        return;
      }
      const ForwardSnapshot snap(solver, w, n_f);
      const Eigen::VectorXcd& u = snap.far_field();
      out.intensities.segment(static_cast<Eigen::Index>(l) * n_f, n_f) = u.cwiseAbs2();
      {
        const Eigen::MatrixXcd du = snap.derivative(h, dl);
        out.jacobian.middleRows(static_cast<Eigen::Index>(l) * n_f, n_f) =
            2.0 * (u.conjugate().asDiagonal() * du).real();
      }
    } catch (...) {
#pragma omp critical(scatter_linearize_failure)
      if (!failure) failure = std::current_exception();
    }
  };
  if (opt.execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int l = 0; l < n_inc; ++l) work(l);
  } else {
    for (int l = 0; l < n_inc; ++l) work(l);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

Eigen::MatrixXd phaseless_jacobian(const IterateState& state, const BoundaryCondition& bc,
                                   double k, const std::vector<Incidence>& incidences,
                                   const JacobianOptions& opt) {
  return linearize(state, bc, k, incidences, opt, true).jacobian;
}

}  // namespace scatter
