#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scatter/frechet.hpp"
#include "scatter/phaseless.hpp"

namespace scatter {

class SingularNormalEquationsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InversionConfig {
  double s = 1.6;
  int M = 25;
  double rho = 0.8;
  double tau = 1.5;
  std::optional<double> delta;  // falls back to the dataset's noise ratio
  int max_iterations = 50;
  double beta_min = 1e-10;
  double beta_max = 1e10;
  double beta_tolerance = 1e-3;
  int beta_max_steps = 200;
  int n_f = 128;
  int n_q = 0;  // 0 selects inversion_quadrature(k, state)
  Execution execution = Execution::Parallel;

  void validate() const;
};

/// Default k schedule of the benchmark experiments.
std::vector<double> default_frequencies();

/// Fixed Nystrom grid used for every iteration at wavenumber k.
int inversion_quadrature(double k, const IterateState& state);

/// Linearized least-squares problem at one iterate:
///   min  w ||J d + r||^2 + beta d^T P d,   w = 2 pi / n_f, P = diag(penalty).
class LinearizedProblem {
 public:
  LinearizedProblem(Eigen::MatrixXd jacobian, Eigen::VectorXd residual, Eigen::VectorXd penalty,
                    double l2_weight);

  /// Normal-equation solution for the given beta.
  Eigen::VectorXd update(double beta) const;
  /// sqrt(w) ||J d(beta) + r|| from the singular value decomposition.
  double predicted_residual(double beta) const;
  double residual_norm() const { return residual_norm_; }
  /// Smallest attainable predicted residual (beta -> 0).
  double residual_floor() const { return floor_; }

  const Eigen::MatrixXd& jacobian() const { return j_; }
  const Eigen::VectorXd& residual() const { return r_; }

 private:
  Eigen::MatrixXd j_;
  Eigen::VectorXd r_;
  Eigen::VectorXd penalty_;
  double w_;
  Eigen::VectorXd sigma_;
  Eigen::VectorXd coeff_;  // U^T b
  double floor_;
  double residual_norm_;
};

struct BetaChoice {
  double beta = 0.0;
  Eigen::VectorXd update;
  double ratio = 0.0;  // predicted residual / current residual
  bool floored = false;  // target unreachable, beta-floor update returned
};

BetaChoice select_beta(const LinearizedProblem& problem, double rho, const InversionConfig& config);

/// Penalty diagonal: 1, 1, H^s weights of the radial coefficients[, 1].
Eigen::VectorXd penalty_weights(int order, double s, bool with_lambda);

/// Mean over incidences of ||F_l - data_l|| / ||data_l||.
double relative_error(const Eigen::VectorXd& predicted, const std::vector<std::vector<double>>& data);

/// Spec-level wrappers evaluated at a state against the dataset slice at k.
double relative_error(const IterateState& state, const BoundaryCondition& bc,
                      const PhaselessDataset& dataset, std::size_t m,
                      const InversionConfig& config);
Eigen::VectorXd lm_update(const IterateState& state, const BoundaryCondition& bc,
                          const PhaselessDataset& dataset, std::size_t m, double beta,
                          const InversionConfig& config);

struct FrequencyReport {
  double k = 0.0;
  int n_q = 0;
  int iterations = 0;
  double err_before = 0.0;
  double err_after = 0.0;
  std::vector<double> beta_history;
  std::vector<double> err_history;
  int non_monotone_steps = 0;
  std::vector<std::string> warnings;
  IterateState state;
};

struct InversionResult {
  IterateState initial;
  IterateState final_state;
  std::vector<FrequencyReport> frequencies;
  int total_iterations() const;
  int non_monotone_steps() const;
};

/// Recursive-in-frequency Levenberg-Marquardt driver over every frequency of
/// the dataset, warm-starting each k from the previous reconstruction.
InversionResult reconstruct(const IterateState& initial, const BoundaryCondition& bc,
                            const PhaselessDataset& dataset, const InversionConfig& config);

/// Circle of radius r0 about `center` with all M radial modes present.
IterateState initial_circle(double r0, const Vec2& center, int order, double lambda = 1.0);

}  // namespace scatter
