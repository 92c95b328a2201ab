#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "scatter/boundary_condition.hpp"
#include "scatter/geometry.hpp"
#include "scatter/incident.hpp"
#include "scatter/nystrom_kernels.hpp"

namespace scatter {

class SingularSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Far-field samples on the uniform grid theta_j = 2 pi j / n_f.
struct FarFieldPattern {
  std::vector<cdouble> samples;
  double k = 0.0;
  std::vector<Vec2> incident;

  int size() const { return static_cast<int>(samples.size()); }
  static std::vector<Vec2> grid(int n_f);
};

double sup_distance(const FarFieldPattern& a, const FarFieldPattern& b);

struct SolverOptions {
  int n_q = 64;
  bool adaptive = true;   // double n_q until the far field settles
  double tolerance = 1e-8;
  int max_n_q = 512;
  /// Coupling of the combined-field ansatz; <= 0 selects the default
  /// (k for Dirichlet, 1 for Neumann and impedance).
  double coupling = 0.0;
  Execution execution = Execution::Parallel;
};

/// Total-field boundary values at the quadrature nodes.
struct BoundaryTraces {
  Eigen::VectorXcd value;         // u on Gamma (exterior side)
  Eigen::VectorXcd normal;        // du/dnu, exterior side
  Eigen::VectorXcd tangential;    // du/dt (parameter derivative)
  Eigen::VectorXcd interior_normal;  // transmission only: du_-/dnu
};

/// Nystrom discretization of one boundary value problem at fixed (curve, bc,
/// k, n_q). The LU factorization is kept so further right-hand sides are one
/// back substitution each. Immutable after construction.
///
/// Formulations (densities phi, psi; factor-2 boundary operators):
///   Dirichlet     u^s = DL phi - i eta SL phi:       (I + K - i eta S) phi = 2 f
///   Neumann       u^s = SL phi + i eta DL phi:       (-I + K' + i eta T) phi = 2 f
///   Impedance     same ansatz, plus mu (S + i eta (K + I)) phi on the left
///   Transmission  u^s = SL_k phi + DL_k psi, u = SL_ki phi + DL_ki psi / lambda
///                 2x2 block system with hypersingular parts cancelling.
class NystromSolver {
 public:
  NystromSolver(const Curve& curve, const BoundaryCondition& bc, double k, int n_q,
                const SolverOptions& options = {}, bool with_traces = true);

  int unknowns() const { return static_cast<int>(lu_.rows()); }
  int n_q() const { return nodes_.n_q; }
  double wavenumber() const { return k_; }
  const BoundaryNodes& nodes() const { return nodes_; }
  const BoundaryCondition& condition() const { return bc_; }

  /// Boundary data for the scattered field from a plane-wave superposition,
  /// stacked as [f] or [f1; f2].
  Eigen::VectorXcd incident_data(const PlaneWaveSuperposition& w) const;

  /// Densities for each column of boundary data.
  Eigen::MatrixXcd solve(const Eigen::MatrixXcd& data) const;

  /// Far-field pattern of each density column at the given directions.
  Eigen::MatrixXcd far_field(const Eigen::MatrixXcd& density,
                             const std::vector<Vec2>& directions) const;

  /// Total-field traces for the scattered density produced by w.
  BoundaryTraces traces(const Eigen::VectorXcd& density, const PlaneWaveSuperposition& w) const;

  const Eigen::MatrixXd& derivative_matrix() const { return diff_; }

 private:
  BoundaryNodes nodes_;
  BoundaryCondition bc_;
  double k_;
  double eta_;
  bool traces_ready_;
  LayerMatrices outer_;
  LayerMatrices inner_;  // transmission only
  Eigen::MatrixXd diff_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

/// Far field for a plane-wave superposition on the n_f-point grid; applies
/// the adaptive refinement in `options`. `used_n_q` reports the final grid.
FarFieldPattern solve_far_field(const Curve& curve, const BoundaryCondition& bc,
                                const PlaneWaveSuperposition& w, int n_f,
                                const SolverOptions& options = {}, int* used_n_q = nullptr);

FarFieldPattern solve_exterior(const Curve& curve, const BoundaryCondition& bc,
                               const PlaneWaveSuperposition& w, int n_f,
                               const SolverOptions& options = {});

FarFieldPattern solve_transmission(const Curve& curve, const Transmission& bc,
                                   const PlaneWaveSuperposition& w, int n_f,
                                   const SolverOptions& options = {});

/// Interior wavenumber k sqrt(n); absorbing media (Im n > 0) are rejected.
double interior_wavenumber(const Transmission& bc, double k);

/// Sum of |u_inf|^2 dtheta versus -sqrt(8 pi/k) Re(exp(i pi/4) u_inf(d)) for
/// a single incident direction d; returns the absolute mismatch.
double optical_theorem_defect(const Curve& curve, const BoundaryCondition& bc, double k,
                              const Vec2& d, int n_f, const SolverOptions& options = {});

}  // namespace scatter
