#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "scatter/forward_solver.hpp"

namespace scatter {

/// Incident directions of one measurement: one plane wave or a pair.
using Incidence = std::vector<Vec2>;

Incidence incidence_from_degrees(const std::vector<double>& degrees);

std::vector<double> intensity(const FarFieldPattern& f);

/// Seeded source of the multiplicative noise factor zeta: a standard normal
/// redrawn until it lands in [-1, 1].
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed) : rng_(seed) {}
  double draw();

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// data_j (1 + delta zeta_j); requires 0 <= delta < 1.
std::vector<double> add_noise(std::span<const double> data, double delta, NoiseSource& source);
std::vector<double> add_noise(std::span<const double> data, double delta, std::uint64_t seed);

/// Intensities |u_inf|^2 indexed by (frequency m, incidence l, angle j).
struct PhaselessDataset {
  double delta = 0.0;
  std::uint64_t seed = 0;
  int n_f = 128;
  std::vector<Incidence> pairs;
  std::vector<double> ks;
  std::vector<std::vector<std::vector<double>>> data;  // [m][l][j]

  const std::vector<double>& at(std::size_t m, std::size_t l) const { return data.at(m).at(l); }
  /// Throws std::invalid_argument on shape or ordering violations.
  void validate() const;
};

/// Forward solves for every (k, incidence) followed by one noise pass in
/// (m, l, j) order from a single seeded source.
PhaselessDataset synthesize_dataset(const Curve& curve, const BoundaryCondition& bc,
                                    const std::vector<Incidence>& pairs,
                                    const std::vector<double>& ks, int n_f, double delta,
                                    std::uint64_t seed, const SolverOptions& options = {});

struct TranslationOffset {
  Vec2 base;  // n_{d1,d2}
  int n = 0;
  double a = 0.0;
  double tau = 0.0;
  Vec2 ell;
};

class DegenerateDirectionsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// ell = a n_{d1,d2} + (2 pi n + tau) / (k |d1 - d2|^2) (d1 - d2), where
/// n_{d1,d2} is (d1 - d2)/|d1 - d2| rotated counter-clockwise by 90 degrees.
TranslationOffset invariance_offset(const Vec2& d1, const Vec2& d2, double k, int n, double a,
                                    std::optional<double> tau = std::nullopt);

/// Adaptive solve settled to 1e-11, so lattice discrepancies sit far below 1e-7.
SolverOptions invariance_solver_options();

/// sup_j | |u_inf_ell(x_j)| - |u_inf(x_j)| | for the curve and its translate.
double check_invariance(const Curve& curve, const BoundaryCondition& bc,
                        const PlaneWaveSuperposition& w, const Vec2& ell, int n_f = 128,
                        const SolverOptions& options = invariance_solver_options());

double check_invariance(const Curve& curve, const BoundaryCondition& bc, const Vec2& d1,
                        const Vec2& d2, double k, const Vec2& ell, int n_f = 128);

}  // namespace scatter
