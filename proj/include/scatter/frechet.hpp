#pragma once

#include <vector>

#include "scatter/forward_solver.hpp"
#include "scatter/phaseless.hpp"

namespace scatter {

/// Inversion unknowns: center, radial coefficients and (transmission) lambda.
struct IterateState {
  StarlikeCurve curve;
  double lambda = 1.0;

  /// (a1, a2, alpha_0..alpha_2M[, lambda])
  Eigen::VectorXd parameters(bool with_lambda) const;
  /// State shifted by a parameter increment laid out as in parameters().
  IterateState advanced(const Eigen::VectorXd& step, double scale = 1.0) const;
  int order() const { return curve.radial.order(); }
};

int unknown_count(int order, bool with_lambda);

/// Boundary condition used at a state: the transmission constant is taken
/// from the state, everything else from `bc`.
BoundaryCondition condition_at(const BoundaryCondition& bc, const IterateState& state);

/// Forward solution for one incidence kept with everything the derivative
/// data needs: densities, total-field traces and the far field.
class ForwardSnapshot {
 public:
  ForwardSnapshot(const NystromSolver& solver, const PlaneWaveSuperposition& w, int n_f);

  const NystromSolver& solver() const { return *solver_; }
  const BoundaryTraces& traces() const { return traces_; }
  const Eigen::VectorXcd& far_field() const { return far_; }
  const std::vector<Vec2>& grid() const { return grid_; }

  /// Far fields of u' for perturbations given by their normal components
  /// h_nu at the nodes (one column each) and lambda increments.
  Eigen::MatrixXcd derivative(const Eigen::MatrixXd& h_normal,
                              const Eigen::VectorXd& dlambda) const;

 private:
  const NystromSolver* solver_;
  std::vector<Vec2> grid_;
  BoundaryTraces traces_;
  Eigen::VectorXcd far_;
};

/// h . nu at the solver's nodes.
Eigen::VectorXd normal_component(const BoundaryNodes& nodes, const BoundaryPerturbation& h);

FarFieldPattern derivative_farfield_dirichlet(const Curve& curve, double k,
                                              const PlaneWaveSuperposition& w,
                                              const BoundaryPerturbation& h, int n_f = 128,
                                              int n_q = 128);
FarFieldPattern derivative_farfield_neumann(const Curve& curve, double k,
                                            const PlaneWaveSuperposition& w,
                                            const BoundaryPerturbation& h, int n_f = 128,
                                            int n_q = 128);
/// Uses h.dlambda as the transmission-constant increment.
FarFieldPattern derivative_farfield_transmission(const Curve& curve, const Transmission& bc,
                                                 double k, const PlaneWaveSuperposition& w,
                                                 const BoundaryPerturbation& h, int n_f = 128,
                                                 int n_q = 128);

/// 2 Re[conj(u_inf) u'_inf] pointwise.
std::vector<double> phaseless_derivative(const FarFieldPattern& u, const FarFieldPattern& du);

/// Forward intensities and phaseless Jacobian at a state, rows stacked by
/// incidence (n_f each), columns ordered as IterateState::parameters().
struct LinearizedModel {
  Eigen::VectorXd intensities;
  Eigen::MatrixXd jacobian;
};

struct JacobianOptions {
  int n_f = 128;
  int n_q = 64;
  Execution execution = Execution::Parallel;
};

LinearizedModel linearize(const IterateState& state, const BoundaryCondition& bc, double k,
                          const std::vector<Incidence>& incidences, const JacobianOptions& opt,
                          bool with_jacobian = true);

Eigen::MatrixXd phaseless_jacobian(const IterateState& state, const BoundaryCondition& bc,
                                   double k, const std::vector<Incidence>& incidences,
                                   const JacobianOptions& opt = {});

}  // namespace scatter
