#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "scatter/geometry.hpp"

namespace scatter {

enum class Execution { Serial, Parallel };

/// Equispaced quadrature nodes t_i = pi i / n_q, i = 0..2n_q-1, with the
/// curve jet at each node.
struct BoundaryNodes {
  int n_q = 0;
  std::vector<double> t;
  std::vector<CurveJet> jets;

  static BoundaryNodes sample(const Curve& curve, int n_q);
  int size() const { return 2 * n_q; }
};

/// Weights R_{|i-j|} integrating ln(4 sin^2((t_i - tau)/2)) times the
/// trigonometric interpolant of nodal values.
std::vector<double> log_quadrature_weights(int n_q);

/// Differentiation matrix of the trigonometric interpolant on 2n_q nodes.
Eigen::MatrixXd spectral_derivative(int n_q);

/// Nystrom matrices of the boundary operators for one real wavenumber, with
/// the usual factor 2 (e.g. S phi = 2 int Phi phi ds):
///   single          S
///   double_layer    K
///   adjoint_double  K'
///   hypersingular   T = d/ds S d/ds + k^2 nu . S nu  (empty unless requested)
struct LayerMatrices {
  Eigen::MatrixXcd single;
  Eigen::MatrixXcd double_layer;
  Eigen::MatrixXcd adjoint_double;
  Eigen::MatrixXcd hypersingular;
};

LayerMatrices assemble_layers(const BoundaryNodes& nodes, double k, bool hypersingular,
                              Execution exec = Execution::Parallel);

/// Trapezoidal far-field operators of the single and double layer potentials,
/// rows indexed by observation direction. Includes exp(i pi/4)/sqrt(8 pi k).
struct FarFieldOperators {
  Eigen::MatrixXcd single;
  Eigen::MatrixXcd double_layer;
};

FarFieldOperators far_field_operators(const BoundaryNodes& nodes, double k,
                                      std::span<const Vec2> directions,
                                      Execution exec = Execution::Parallel);

}  // namespace scatter
