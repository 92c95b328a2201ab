#include "scatter/incident.hpp"

#include <cmath>
#include <stdexcept>

namespace scatter {

void validate(const BoundaryCondition& bc) {
  if (const auto* tr = std::get_if<Transmission>(&bc)) {
    if (!(tr->n.real() > 0.0) || tr->n.imag() < 0.0) {
      throw std::invalid_argument("transmission: need Re(n) > 0 and Im(n) >= 0");
    }
    if (!(tr->lambda > 0.0)) throw std::invalid_argument("transmission: need lambda > 0");
  }
}

bool is_transmission(const BoundaryCondition& bc) {
  return std::holds_alternative<Transmission>(bc);
}

const char* bc_name(const BoundaryCondition& bc) {
  switch (bc.index()) {
    case 0: return "dirichlet";
    case 1: return "neumann";
    case 2: return "impedance";
    default: return "transmission";
  }
}

PlaneWaveSuperposition::PlaneWaveSuperposition(double k, std::vector<Vec2> directions)
    : k_(k), dirs_(std::move(directions)) {
  if (!(k_ > 0.0)) throw std::invalid_argument("wavenumber must be positive");
  if (dirs_.empty() || dirs_.size() > 2) {
    throw std::invalid_argument("one or two incident directions expected");
  }
  for (const auto& d : dirs_) {
    if (std::abs(d.norm() - 1.0) > 1e-14) {
      throw std::invalid_argument("incident direction is not a unit vector");
    }
  }
  if (dirs_.size() == 2 && (dirs_[0] - dirs_[1]).norm() < 1e-12) {
    throw std::invalid_argument("the two incident directions coincide");
  }
}

PlaneWaveSuperposition PlaneWaveSuperposition::from_angles(double k,
                                                           const std::vector<double>& radians) {
  std::vector<Vec2> d;
  d.reserve(radians.size());
  for (double a : radians) d.emplace_back(std::cos(a), std::sin(a));
  return PlaneWaveSuperposition(k, std::move(d));
}

cdouble PlaneWaveSuperposition::value(const Vec2& x) const {
  cdouble sum = 0.0;
  for (const auto& d : dirs_) sum += std::exp(cdouble(0.0, k_ * d.dot(x)));
  return sum;
}

Eigen::Vector2cd PlaneWaveSuperposition::gradient(const Vec2& x) const {
  Eigen::Vector2cd g = Eigen::Vector2cd::Zero();
  for (const auto& d : dirs_) {
    const cdouble e = cdouble(0.0, k_) * std::exp(cdouble(0.0, k_ * d.dot(x)));
    g += e * d.cast<cdouble>();
  }
  return g;
}

TraceDatum trace_data(const PlaneWaveSuperposition& w, const CurveJet& jet,
                      const BoundaryCondition& bc) {
  const cdouble u = w.value(jet.point);
  const Eigen::Vector2cd g = w.gradient(jet.point);
  const cdouble du = g(0) * jet.normal.x() + g(1) * jet.normal.y();
  return std::visit(
      [&](const auto& b) -> TraceDatum {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Dirichlet>) {
          return {-u, 0.0};
        } else if constexpr (std::is_same_v<T, Neumann>) {
          return {-du, 0.0};
        } else if constexpr (std::is_same_v<T, Impedance>) {
          return {-(du + b.mu * u), 0.0};
        } else {
          return {-u, -du};
        }
      },
      bc);
}

TraceDatum trace_data(const PlaneWaveSuperposition& w, const Curve& curve, double t,
                      const BoundaryCondition& bc) {
  return trace_data(w, curve_jet(curve, t), bc);
}

}  // namespace scatter
