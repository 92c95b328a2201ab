#pragma once

#include <Eigen/Dense>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

namespace scatter {

using Vec2 = Eigen::Vector2d;

class DegenerateCurveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Real trigonometric polynomial of order M,
///   p(t) = a_0 + sum_{l=1}^{M} [a_l cos(l t) + a_{l+M} sin(l t)],
/// stored as the 2M+1 coefficients a_0..a_{2M}.
class TrigPolynomial {
 public:
  TrigPolynomial() : alpha_(1, 0.0) {}
  explicit TrigPolynomial(std::vector<double> alpha);

  static TrigPolynomial constant(double value, int order);
  static TrigPolynomial zero(int order) { return constant(0.0, order); }

  int order() const { return static_cast<int>(alpha_.size() / 2); }
  std::size_t size() const { return alpha_.size(); }
  std::span<const double> coefficients() const { return alpha_; }
  double& operator[](std::size_t i) { return alpha_[i]; }
  double operator[](std::size_t i) const { return alpha_[i]; }

  /// k-th derivative (k = 0, 1, 2) at t.
  double evaluate(double t, int derivative = 0) const;
  double operator()(double t) const { return evaluate(t); }

  bool is_zero() const;

 private:
  std::vector<double> alpha_;
};

/// ||p||^2_{H^s} = 2 pi a_0^2 + pi sum_l (1 + l^2)^s (a_l^2 + a_{l+M}^2)
double hs_norm_squared(const TrigPolynomial& p, double s);

/// Diagonal weights of the H^s quadratic form, aligned with the coefficients.
std::vector<double> hs_weights(int order, double s);

enum class BenchmarkKind { Circle, Apple, Kite, RoundedTriangle };

/// Closed-form test obstacles. `offset` translates the curve (for circles it
/// is the center) and `radial_perturbation` adds dr(t) (cos t, sin t), which
/// is how translated and perturbed copies are represented.
struct BenchmarkCurve {
  BenchmarkKind kind = BenchmarkKind::Circle;
  double r0 = 1.0;
  Vec2 offset = Vec2::Zero();
  TrigPolynomial radial_perturbation;

  static BenchmarkCurve circle(double r0, Vec2 center = Vec2::Zero());
  static BenchmarkCurve apple();
  static BenchmarkCurve kite();
  static BenchmarkCurve rounded_triangle();
};

/// gamma(t) = center + r(t) (cos t, sin t)
struct StarlikeCurve {
  Vec2 center = Vec2::Zero();
  TrigPolynomial radial;

  static StarlikeCurve circle(double r0, Vec2 center, int order);
};

using Curve = std::variant<BenchmarkCurve, StarlikeCurve>;

struct CurveJet {
  Vec2 point;
  Vec2 d1;      // gamma'(t)
  Vec2 d2;      // gamma''(t)
  Vec2 normal;  // unit, exterior
  double speed; // |gamma'(t)|
};

Vec2 curve_point(const Curve& curve, double t);
CurveJet curve_jet(const Curve& curve, double t);

/// h(t) = shift + dr(t) (cos t, sin t), plus a transmission-constant increment.
struct BoundaryPerturbation {
  Vec2 shift = Vec2::Zero();
  TrigPolynomial radial;
  double dlambda = 0.0;

  Vec2 value(double t) const;
};

Curve translated(const Curve& curve, const Vec2& shift);
Curve perturbed(const Curve& curve, const BoundaryPerturbation& h, double scale);

inline constexpr int kGeometryGrid = 512;
inline constexpr double kMinRadius = 0.05;

double min_radius(const StarlikeCurve& curve, int grid = kGeometryGrid);
bool radial_positive(const StarlikeCurve& curve, double r_min = kMinRadius,
                     int grid = kGeometryGrid);

std::vector<Vec2> sample_curve(const Curve& curve, int samples);
double enclosed_area(const Curve& curve, int samples = kGeometryGrid);
Vec2 area_centroid(const Curve& curve, int samples = kGeometryGrid);
double perimeter(const Curve& curve, int samples = kGeometryGrid);

/// Distances between two closed curves measured on dense polylines.
struct CurveDistance {
  double hausdorff;
  double rms;  // root mean square of point-to-curve distances, both directions
};
CurveDistance curve_distance(const Curve& a, const Curve& b, int samples = 2048);

/// rms distance divided by the rms radius of `reference` about its centroid.
double relative_boundary_error(const Curve& reconstruction, const Curve& reference,
                               int samples = 2048);

}  // namespace scatter
