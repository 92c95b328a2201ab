#include "scatter/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace scatter {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Radial {
  double r, dr, ddr;
};

// gamma = c + r e(t), e = (cos t, sin t), e_perp = (-sin t, cos t)
void add_radial(const Radial& rad, double t, Vec2& p, Vec2& d1, Vec2& d2) {
  const Vec2 e(std::cos(t), std::sin(t));
  const Vec2 ep(-e.y(), e.x());
  p += rad.r * e;
  d1 += rad.dr * e + rad.r * ep;
  d2 += (rad.ddr - rad.r) * e + 2.0 * rad.dr * ep;
}

Radial apple_radial(double t) {
  const double c = std::cos(t), s = std::sin(t);
  const double c2 = std::cos(2.0 * t), s2 = std::sin(2.0 * t);
  const double p = 0.5 + 0.4 * c + 0.1 * s2;
  const double dp = -0.4 * s + 0.2 * c2;
  const double ddp = -0.4 * c - 0.4 * s2;
  const double q = 1.0 + 0.7 * c;
  const double dq = -0.7 * s;
  const double ddq = -0.7 * c;
  const double num1 = dp * q - p * dq;
  return {p / q, num1 / (q * q),
          (ddp * q - p * ddq) / (q * q) - 2.0 * dq * num1 / (q * q * q)};
}

CurveJet finish(Vec2 p, Vec2 d1, Vec2 d2) {
  const double speed = d1.norm();
  if (speed < 1e-12) throw DegenerateCurveError("curve has vanishing tangent");
  return {p, d1, d2, Vec2(d1.y(), -d1.x()) / speed, speed};
}

CurveJet benchmark_jet(const BenchmarkCurve& c, double t) {
  Vec2 p = c.offset, d1 = Vec2::Zero(), d2 = Vec2::Zero();
  switch (c.kind) {
    case BenchmarkKind::Circle:
      add_radial({c.r0, 0.0, 0.0}, t, p, d1, d2);
      break;
    case BenchmarkKind::Apple:
      add_radial(apple_radial(t), t, p, d1, d2);
      break;
    case BenchmarkKind::RoundedTriangle:
      add_radial({2.0 + 0.3 * std::cos(3.0 * t), -0.9 * std::sin(3.0 * t),
                  -2.7 * std::cos(3.0 * t)},
                 t, p, d1, d2);
      break;
    case BenchmarkKind::Kite:
      p += Vec2(std::cos(t) + 0.65 * std::cos(2.0 * t) - 0.65, 1.5 * std::sin(t));
      d1 += Vec2(-std::sin(t) - 1.3 * std::sin(2.0 * t), 1.5 * std::cos(t));
      d2 += Vec2(-std::cos(t) - 2.6 * std::cos(2.0 * t), -1.5 * std::sin(t));
      break;
  }
  if (!c.radial_perturbation.is_zero()) {
    const auto& dr = c.radial_perturbation;
    add_radial({dr.evaluate(t), dr.evaluate(t, 1), dr.evaluate(t, 2)}, t, p, d1, d2);
  }
  return finish(p, d1, d2);
}

CurveJet starlike_jet(const StarlikeCurve& c, double t) {
  Vec2 p = c.center, d1 = Vec2::Zero(), d2 = Vec2::Zero();
  add_radial({c.radial.evaluate(t), c.radial.evaluate(t, 1), c.radial.evaluate(t, 2)}, t, p,
             d1, d2);
  return finish(p, d1, d2);
}

TrigPolynomial add_scaled(const TrigPolynomial& a, const TrigPolynomial& b, double scale) {
  const int order = std::max(a.order(), b.order());
  TrigPolynomial out = TrigPolynomial::zero(order);
  auto accumulate = [&](const TrigPolynomial& p, double w) {
    const int m = p.order();
    out[0] += w * p[0];
    for (int l = 1; l <= m; ++l) {
      out[static_cast<std::size_t>(l)] += w * p[static_cast<std::size_t>(l)];
      out[static_cast<std::size_t>(l + order)] += w * p[static_cast<std::size_t>(l + m)];
    }
  };
  accumulate(a, 1.0);
  accumulate(b, scale);
  return out;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  double s = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

double distance_to_polyline(const Vec2& p, const std::vector<Vec2>& poly) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
  }
  return best;
}

}  // namespace

TrigPolynomial::TrigPolynomial(std::vector<double> alpha) : alpha_(std::move(alpha)) {
  if (alpha_.empty() || alpha_.size() % 2 == 0) {
    throw std::invalid_argument("TrigPolynomial needs 2M+1 coefficients, got " +
                                std::to_string(alpha_.size()));
  }
}

TrigPolynomial TrigPolynomial::constant(double value, int order) {
  std::vector<double> a(2 * static_cast<std::size_t>(order) + 1, 0.0);
  a[0] = value;
  return TrigPolynomial(std::move(a));
}

double TrigPolynomial::evaluate(double t, int derivative) const {
  const int m = order();
  double sum = derivative == 0 ? alpha_[0] : 0.0;
  for (int l = 1; l <= m; ++l) {
    const double a = alpha_[static_cast<std::size_t>(l)];
    const double b = alpha_[static_cast<std::size_t>(l + m)];
    const double c = std::cos(l * t), s = std::sin(l * t);
    switch (derivative) {
      case 0: sum += a * c + b * s; break;
      case 1: sum += l * (-a * s + b * c); break;
      case 2: sum -= l * l * (a * c + b * s); break;
      default: throw std::invalid_argument("TrigPolynomial: derivative order > 2");
    }
  }
  return sum;
}

bool TrigPolynomial::is_zero() const {
  return std::all_of(alpha_.begin(), alpha_.end(), [](double a) { return a == 0.0; });
}

std::vector<double> hs_weights(int order, double s) {
  std::vector<double> w(2 * static_cast<std::size_t>(order) + 1);
  w[0] = kTwoPi;
  for (int l = 1; l <= order; ++l) {
    const double v = std::numbers::pi * std::pow(1.0 + l * l, s);
    w[static_cast<std::size_t>(l)] = v;
    w[static_cast<std::size_t>(l + order)] = v;
  }
  return w;
}

double hs_norm_squared(const TrigPolynomial& p, double s) {
  const auto w = hs_weights(p.order(), s);
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += w[i] * p[i] * p[i];
  return sum;
}

BenchmarkCurve BenchmarkCurve::circle(double r0, Vec2 center) {
  BenchmarkCurve c;
  c.kind = BenchmarkKind::Circle;
  c.r0 = r0;
  c.offset = center;
  return c;
}

BenchmarkCurve BenchmarkCurve::apple() {
  BenchmarkCurve c;
  c.kind = BenchmarkKind::Apple;
  return c;
}

BenchmarkCurve BenchmarkCurve::kite() {
  BenchmarkCurve c;
  c.kind = BenchmarkKind::Kite;
  return c;
}

BenchmarkCurve BenchmarkCurve::rounded_triangle() {
  BenchmarkCurve c;
  c.kind = BenchmarkKind::RoundedTriangle;
  return c;
}

StarlikeCurve StarlikeCurve::circle(double r0, Vec2 center, int order) {
  return {center, TrigPolynomial::constant(r0, order)};
}

CurveJet curve_jet(const Curve& curve, double t) {
  return std::visit(
      [t](const auto& c) -> CurveJet {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, BenchmarkCurve>) {
          return benchmark_jet(c, t);
        } else {
          return starlike_jet(c, t);
        }
      },
      curve);
}

Vec2 curve_point(const Curve& curve, double t) { return curve_jet(curve, t).point; }

Vec2 BoundaryPerturbation::value(double t) const {
  return shift + radial.evaluate(t) * Vec2(std::cos(t), std::sin(t));
}

Curve translated(const Curve& curve, const Vec2& shift) {
  return std::visit(
      [&](auto c) -> Curve {
        if constexpr (std::is_same_v<decltype(c), BenchmarkCurve>) {
          c.offset += shift;
        } else {
          c.center += shift;
        }
        return c;
      },
      curve);
}

Curve perturbed(const Curve& curve, const BoundaryPerturbation& h, double scale) {
  return std::visit(
      [&](auto c) -> Curve {
        if constexpr (std::is_same_v<decltype(c), BenchmarkCurve>) {
          c.offset += scale * h.shift;
          c.radial_perturbation = add_scaled(c.radial_perturbation, h.radial, scale);
        } else {
          c.center += scale * h.shift;
          c.radial = add_scaled(c.radial, h.radial, scale);
        }
        return c;
      },
      curve);
}

double min_radius(const StarlikeCurve& curve, int grid) {
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    best = std::min(best, curve.radial.evaluate(kTwoPi * j / grid));
  }
  return best;
}

bool radial_positive(const StarlikeCurve& curve, double r_min, int grid) {
  return min_radius(curve, grid) >= r_min;
}

std::vector<Vec2> sample_curve(const Curve& curve, int samples) {
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) pts.push_back(curve_point(curve, kTwoPi * j / samples));
  return pts;
}

double enclosed_area(const Curve& curve, int samples) {
  double a = 0.0;
  for (int j = 0; j < samples; ++j) {
    const CurveJet g = curve_jet(curve, kTwoPi * j / samples);
    a += g.point.x() * g.d1.y() - g.point.y() * g.d1.x();
  }
  return 0.5 * a * kTwoPi / samples;
}

Vec2 area_centroid(const Curve& curve, int samples) {
  double a = 0.0, mx = 0.0, my = 0.0;
  for (int j = 0; j < samples; ++j) {
    const CurveJet g = curve_jet(curve, kTwoPi * j / samples);
    const double x = g.point.x(), y = g.point.y();
    a += 0.5 * (x * g.d1.y() - y * g.d1.x());
    mx += 0.5 * x * x * g.d1.y();
    my -= 0.5 * y * y * g.d1.x();
  }
  return Vec2(mx, my) / a;
}

double perimeter(const Curve& curve, int samples) {
  double l = 0.0;
  for (int j = 0; j < samples; ++j) l += curve_jet(curve, kTwoPi * j / samples).speed;
  return l * kTwoPi / samples;
}

CurveDistance curve_distance(const Curve& a, const Curve& b, int samples) {
  const auto pa = sample_curve(a, samples);
  const auto pb = sample_curve(b, samples);
  double hausdorff = 0.0, sum2 = 0.0;
  for (const auto& p : pa) {
    const double d = distance_to_polyline(p, pb);
    hausdorff = std::max(hausdorff, d);
    sum2 += d * d;
  }
  for (const auto& p : pb) {
    const double d = distance_to_polyline(p, pa);
    hausdorff = std::max(hausdorff, d);
    sum2 += d * d;
  }
  return {hausdorff, std::sqrt(sum2 / (2.0 * samples))};
}

double relative_boundary_error(const Curve& reconstruction, const Curve& reference,
                               int samples) {
  const Vec2 c = area_centroid(reference);
  double r2 = 0.0;
  for (const auto& p : sample_curve(reference, samples)) r2 += (p - c).squaredNorm();
  return curve_distance(reconstruction, reference, samples).rms / std::sqrt(r2 / samples);
}

}  // namespace scatter
