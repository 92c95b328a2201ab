#pragma once

#include <stdexcept>
#include <vector>

#include "scatter/boundary_condition.hpp"
#include "scatter/forward_solver.hpp"
#include "scatter/geometry.hpp"

namespace scatter {

class ModeSingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeriesTruncation {
  int m_max = 0;
  double tail_bound = 0.0;
};

/// Scattered-wave coefficient c_m of the cylindrical mode m for a circle of
/// radius R centred at the origin: u^s = sum_m c_m i^m H_m(k r) e^{i m (phi - theta_d)}.
cdouble mode_coefficient(int m, double R, const BoundaryCondition& bc, double k);

/// Smallest m_max >= max(20, ceil(kR) + 15) whose neglected tail is below 1e-13.
SeriesTruncation series_truncation(double R, const BoundaryCondition& bc, double k);

/// Far field of a circle (radius R, given center) for one incident direction.
FarFieldPattern series_farfield(double R, const Vec2& center, const BoundaryCondition& bc,
                                double k, const Vec2& d, int n_f, int m_max = 0);

/// Same, summed over the directions of a superposition.
FarFieldPattern circle_oracle(double R, const Vec2& center, const BoundaryCondition& bc,
                              const PlaneWaveSuperposition& w, int n_f);

}  // namespace scatter
