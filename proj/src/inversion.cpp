#include "scatter/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace scatter {
namespace {

constexpr double kMinLambda = 1e-3;
constexpr int kMaxBacktracks = 20;

Eigen::VectorXd stacked(const std::vector<std::vector<double>>& data) {
  Eigen::Index total = 0;
  for (const auto& v : data) total += static_cast<Eigen::Index>(v.size());
  Eigen::VectorXd y(total);
  Eigen::Index pos = 0;
  for (const auto& v : data) {
    y.segment(pos, static_cast<Eigen::Index>(v.size())) =
        Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    pos += static_cast<Eigen::Index>(v.size());
  }
  return y;
}

JacobianOptions jacobian_options(const InversionConfig& config, double k, const IterateState& s) {
  JacobianOptions o;
  o.n_f = config.n_f;
  o.n_q = config.n_q > 0 ? config.n_q : inversion_quadrature(k, s);
  o.execution = config.execution;
  return o;
}

bool admissible(const IterateState& s, bool with_lambda) {
  return radial_positive(s.curve) && (!with_lambda || s.lambda >= kMinLambda);
}

std::string format_warning(double k, const std::string& what) {
  std::ostringstream os;
  os << "k = " << k << ": " << what;
  return os.str();
}

}  // namespace

void InversionConfig::validate() const {
  if (!(s >= 0.0)) throw std::invalid_argument("inversion: s must be non-negative");
  if (M < 0) throw std::invalid_argument("inversion: M must be non-negative");
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("inversion: rho must lie in (0, 1)");
  if (!(tau > 1.0)) throw std::invalid_argument("inversion: tau must exceed 1");
  if (delta && !(*delta >= 0.0 && *delta < 1.0)) {
    throw std::invalid_argument("inversion: delta must lie in [0, 1)");
  }
  if (max_iterations < 0) throw std::invalid_argument("inversion: negative iteration cap");
  if (!(beta_min > 0.0 && beta_max > beta_min)) throw std::invalid_argument("inversion: bad beta bracket");
  if (!(beta_tolerance > 0.0)) throw std::invalid_argument("inversion: bad beta tolerance");
  if (n_f < 2) throw std::invalid_argument("inversion: n_f must be at least 2");
  if (n_q < 0) throw std::invalid_argument("inversion: n_q must be non-negative");
}

std::vector<double> default_frequencies() { return {0.5, 1.0, 3.0, 5.0, 7.0, 9.0, 11.0}; }

int inversion_quadrature(double k, const IterateState& state) {
  double r_max = 0.0;
  for (int i = 0; i < kGeometryGrid; ++i) {
    r_max = std::max(r_max, state.curve.radial(2.0 * std::numbers::pi * i / kGeometryGrid));
  }
  const int wanted = static_cast<int>(std::ceil(4.0 * k * r_max)) + 40;
  return std::clamp((wanted + 15) / 16 * 16, 64, 256);
}

Eigen::VectorXd penalty_weights(int order, double s, bool with_lambda) {
  Eigen::VectorXd p(unknown_count(order, with_lambda));
  p(0) = 1.0;
  p(1) = 1.0;
  const auto hs = hs_weights(order, s);
  for (std::size_t i = 0; i < hs.size(); ++i) p(2 + static_cast<Eigen::Index>(i)) = hs[i];
  if (with_lambda) p(p.size() - 1) = 1.0;
  return p;
}

LinearizedProblem::LinearizedProblem(Eigen::MatrixXd jacobian, Eigen::VectorXd residual,
                                     Eigen::VectorXd penalty, double l2_weight)
    : j_(std::move(jacobian)), r_(std::move(residual)), penalty_(std::move(penalty)), w_(l2_weight) {
  if (j_.rows() != r_.size() || j_.cols() != penalty_.size()) {
    throw std::invalid_argument("LinearizedProblem: inconsistent dimensions");
  }
  if (!(w_ > 0.0) || (penalty_.array() <= 0.0).any()) {
    throw std::invalid_argument("LinearizedProblem: weights must be positive");
  }
  const double sw = std::sqrt(w_);
  const Eigen::MatrixXd a = sw * j_ * penalty_.cwiseSqrt().cwiseInverse().asDiagonal();
  const Eigen::VectorXd b = -sw * r_;
  const Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  sigma_ = svd.singularValues();
  coeff_ = svd.matrixU().transpose() * b;
  floor_ = (b - svd.matrixU() * coeff_).norm();
  residual_norm_ = b.norm();
}

Eigen::VectorXd LinearizedProblem::update(double beta) const {
  if (!(beta > 0.0)) throw std::invalid_argument("update: beta must be positive");
  Eigen::MatrixXd n = w_ * (j_.transpose() * j_);
  n.diagonal() += beta * penalty_;
  const Eigen::LLT<Eigen::MatrixXd> llt(n);
  if (llt.info() != Eigen::Success) {
    throw SingularNormalEquationsError("normal equations are not positive definite");
  }
  Eigen::VectorXd d = llt.solve(-w_ * (j_.transpose() * r_));
  if (!d.allFinite()) throw SingularNormalEquationsError("normal equations produced a non-finite step");
  return d;
}

double LinearizedProblem::predicted_residual(double beta) const {
  double sum = floor_ * floor_;
  for (Eigen::Index i = 0; i < sigma_.size(); ++i) {
    const double f = beta / (sigma_(i) * sigma_(i) + beta);
    sum += f * f * coeff_(i) * coeff_(i);
  }
  return std::sqrt(sum);
}

BetaChoice select_beta(const LinearizedProblem& problem, double rho, const InversionConfig& config) {
  const double current = problem.residual_norm();
  if (!(current > 0.0)) throw std::invalid_argument("select_beta: residual is already zero");
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("select_beta: rho must lie in (0, 1)");
  const double target = rho * current;
  BetaChoice out;
  auto finish = [&](double beta) {
    out.beta = beta;
    out.update = problem.update(beta);
    const Eigen::VectorXd lin = problem.jacobian() * out.update + problem.residual();
    out.ratio = lin.norm() / problem.residual().norm();
    return out;
  };
  if (problem.residual_floor() >= target) {
    out.floored = true;
    return finish(config.beta_min);
  }

  double lo = config.beta_min;
  double hi = config.beta_max;
  int steps = 0;
  while (problem.predicted_residual(hi) < target && steps++ < config.beta_max_steps) hi *= 100.0;
  while (problem.predicted_residual(lo) > target && steps++ < config.beta_max_steps) lo /= 100.0;

  double beta = std::sqrt(lo * hi);
  for (int it = 0; it < config.beta_max_steps; ++it) {
    beta = std::sqrt(lo * hi);
    const double ratio = problem.predicted_residual(beta) / target;
    if (std::abs(ratio - 1.0) < config.beta_tolerance) break;
    (ratio > 1.0 ? hi : lo) = beta;
  }
  return finish(beta);
}

double relative_error(const Eigen::VectorXd& predicted, const std::vector<std::vector<double>>& data) {
  if (data.empty()) throw std::invalid_argument("relative_error: no data");
  double sum = 0.0;
  Eigen::Index pos = 0;
  for (const auto& v : data) {
    const auto n = static_cast<Eigen::Index>(v.size());
    if (pos + n > predicted.size()) throw std::invalid_argument("relative_error: size mismatch");
    const Eigen::Map<const Eigen::VectorXd> y(v.data(), n);
    const double denom = y.norm();
    if (!(denom > 0.0)) throw std::invalid_argument("relative_error: zero data block");
    sum += (predicted.segment(pos, n) - y).norm() / denom;
    pos += n;
  }
  if (pos != predicted.size()) throw std::invalid_argument("relative_error: size mismatch");
  return sum / static_cast<double>(data.size());
}

double relative_error(const IterateState& state, const BoundaryCondition& bc,
                      const PhaselessDataset& dataset, std::size_t m,
                      const InversionConfig& config) {
  const double k = dataset.ks.at(m);
  const auto model = linearize(state, bc, k, dataset.pairs, jacobian_options(config, k, state), false);
  return relative_error(model.intensities, dataset.data.at(m));
}

Eigen::VectorXd lm_update(const IterateState& state, const BoundaryCondition& bc,
                          const PhaselessDataset& dataset, std::size_t m, double beta,
                          const InversionConfig& config) {
  const double k = dataset.ks.at(m);
  const auto model = linearize(state, bc, k, dataset.pairs, jacobian_options(config, k, state), true);
  const bool with_lambda = is_transmission(bc);
  const LinearizedProblem problem(model.jacobian, model.intensities - stacked(dataset.data.at(m)),
                                  penalty_weights(state.order(), config.s, with_lambda),
                                  2.0 * std::numbers::pi / config.n_f);
  return problem.update(beta);
}

int InversionResult::total_iterations() const {
  int n = 0;
  for (const auto& f : frequencies) n += f.iterations;
  return n;
}

int InversionResult::non_monotone_steps() const {
  int n = 0;
  for (const auto& f : frequencies) n += f.non_monotone_steps;
  return n;
}

InversionResult reconstruct(const IterateState& initial, const BoundaryCondition& bc,
                            const PhaselessDataset& dataset, const InversionConfig& config) {
  config.validate();
  dataset.validate();
  validate(bc);
  if (dataset.n_f != config.n_f) throw std::invalid_argument("reconstruct: n_f differs from the dataset");
  if (initial.order() != config.M) throw std::invalid_argument("reconstruct: initial state order differs from M");
  const bool with_lambda = is_transmission(bc);
  if (with_lambda && !(initial.lambda > 0.0)) throw std::invalid_argument("reconstruct: initial lambda must be positive");
  if (!radial_positive(initial.curve)) throw std::invalid_argument("reconstruct: initial radial function not positive");

  const double delta = config.delta.value_or(dataset.delta);
  const double stop = std::max(config.tau * delta, 1e-8);
  const Eigen::VectorXd penalty = penalty_weights(config.M, config.s, with_lambda);
  const double l2w = 2.0 * std::numbers::pi / config.n_f;

  InversionResult result;
  result.initial = initial;
  IterateState state = initial;
  for (std::size_t m = 0; m < dataset.ks.size(); ++m) {
    const double k = dataset.ks[m];
    const Eigen::VectorXd y = stacked(dataset.data[m]);
    FrequencyReport rep;
    rep.k = k;
    const JacobianOptions jopt = jacobian_options(config, k, state);
    rep.n_q = jopt.n_q;

    LinearizedModel model = linearize(state, bc, k, dataset.pairs, jopt, true);
    double err = relative_error(model.intensities, dataset.data[m]);
    rep.err_before = err;
    rep.err_history.push_back(err);
    while (err >= stop && rep.iterations < config.max_iterations) {
      const LinearizedProblem problem(model.jacobian, model.intensities - y, penalty, l2w);
      BetaChoice choice;
      try {
        choice = select_beta(problem, config.rho, config);
      } catch (const SingularNormalEquationsError& e) {
        rep.warnings.push_back(format_warning(k, e.what()));
        break;
      }
      if (choice.floored) rep.warnings.push_back(format_warning(k, "target reduction unreachable, beta floor used"));
      rep.beta_history.push_back(choice.beta);

      double scale = 1.0;
      IterateState next = state.advanced(choice.update, scale);
      int backtracks = 0;
      while (!admissible(next, with_lambda) && backtracks < kMaxBacktracks) {
        scale *= 0.5;
        ++backtracks;
        next = state.advanced(choice.update, scale);
      }
      if (with_lambda && next.lambda < kMinLambda) next.lambda = kMinLambda;
      if (!radial_positive(next.curve)) {
        rep.warnings.push_back(format_warning(k, "step rejected: radial function not positive"));
        break;
      }
      if (backtracks > 0) rep.warnings.push_back(format_warning(k, "step shortened to keep the curve admissible"));

      LinearizedModel next_model;
      try {
        next_model = linearize(next, bc, k, dataset.pairs, jopt, true);
      } catch (const SingularSystemError& e) {
        rep.warnings.push_back(format_warning(k, e.what()));
        break;
      }
      const double next_err = relative_error(next_model.intensities, dataset.data[m]);
      if (next_err > err) ++rep.non_monotone_steps;
      state = std::move(next);
      model = std::move(next_model);
      err = next_err;
      rep.err_history.push_back(err);
      ++rep.iterations;
    }
    if (err >= stop && rep.iterations >= config.max_iterations) {
      rep.warnings.push_back(format_warning(k, "iteration cap reached"));
    }
    rep.err_after = err;
    rep.state = state;
    result.frequencies.push_back(std::move(rep));
  }
  result.final_state = state;
  return result;
}

IterateState initial_circle(double r0, const Vec2& center, int order, double lambda) {
  IterateState s;
  s.curve = StarlikeCurve::circle(r0, center, order);
  s.lambda = lambda;
  return s;
}

}  // namespace scatter
