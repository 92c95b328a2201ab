#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "scatter/boundary_condition.hpp"
#include "scatter/geometry.hpp"

namespace scatter {

/// Sum of unit-amplitude plane waves exp(i k d_j . x), one or two directions.
class PlaneWaveSuperposition {
 public:
  PlaneWaveSuperposition(double k, std::vector<Vec2> directions);
  static PlaneWaveSuperposition from_angles(double k, const std::vector<double>& radians);

  double wavenumber() const { return k_; }
  const std::vector<Vec2>& directions() const { return dirs_; }

  cdouble value(const Vec2& x) const;
  Eigen::Vector2cd gradient(const Vec2& x) const;

 private:
  double k_;
  std::vector<Vec2> dirs_;
};

inline cdouble field_value(const PlaneWaveSuperposition& w, const Vec2& x) { return w.value(x); }

/// Right-hand side of the scattered-field problem: f for the exterior
/// conditions, (f1, f2) for transmission (second stays zero otherwise).
struct TraceDatum {
  cdouble first = 0.0;
  cdouble second = 0.0;
};

TraceDatum trace_data(const PlaneWaveSuperposition& w, const Curve& curve, double t,
                      const BoundaryCondition& bc);
TraceDatum trace_data(const PlaneWaveSuperposition& w, const CurveJet& jet,
                      const BoundaryCondition& bc);

}  // namespace scatter
