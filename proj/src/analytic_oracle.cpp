#include "scatter/analytic_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "scatter/special_functions.hpp"

namespace scatter {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTailTarget = 1e-13;
constexpr int kMaxMode = kMaxBesselOrder - 2;

}  // namespace

cdouble mode_coefficient(int m, double R, const BoundaryCondition& bc, double k) {
  m = std::abs(m);  // every coefficient is even in m for a centred circle
  const double x = k * R;
  const double j = bessel_j(m, x);
  const double jp = bessel_j_prime(m, x);
  const cdouble h = hankel1(m, x);
  const cdouble hp = hankel1_prime(m, x);
  if (!std::isfinite(std::abs(h)) || !std::isfinite(std::abs(hp))) return 0.0;
  return std::visit(
      [&](const auto& b) -> cdouble {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Dirichlet>) {
          return -j / h;
        } else if constexpr (std::is_same_v<T, Neumann>) {
          return -jp / hp;
        } else if constexpr (std::is_same_v<T, Impedance>) {
          const double q = b.mu / k;
          return -(jp + q * j) / (hp + q * h);
        } else {
          const double ki = interior_wavenumber(b, k);
          const double ji = bessel_j(m, ki * R);
          const double jip = bessel_j_prime(m, ki * R);
          // [h, -ji; k hp, -lambda ki jip] [a; b] = [-j; -k jp]
          const cdouble det = -b.lambda * ki * h * jip + k * ji * hp;
          const double scale = std::abs(b.lambda * ki * h * jip) + std::abs(k * ji * hp);
          if (!(std::abs(det) > 1e-14 * scale)) {
            throw ModeSingularityError("transmission mode " + std::to_string(m) +
                                       " is singular at k = " + std::to_string(k));
          }
          return (b.lambda * ki * j * jip - k * ji * jp) / det;
        }
      },
      bc);
}

SeriesTruncation series_truncation(double R, const BoundaryCondition& bc, double k) {
  int m_max = std::max(20, static_cast<int>(std::ceil(k * R)) + 15);
  const double prefactor = std::sqrt(2.0 / (kPi * k));
  for (;;) {
    // Beyond m ~ kR the coefficients decay super-exponentially, so twice
    // the first neglected pair bounds the tail.
    const double first = std::abs(mode_coefficient(m_max + 1, R, bc, k));
    const double tail = 4.0 * prefactor * first;
    if (tail < kTailTarget || m_max >= kMaxMode) return {m_max, tail};
    m_max = std::min(m_max + 5, kMaxMode);
  }
}

FarFieldPattern series_farfield(double R, const Vec2& center, const BoundaryCondition& bc,
                                double k, const Vec2& d, int n_f, int m_max) {
  if (!(R > 0.0)) throw std::invalid_argument("circle radius must be positive");
  validate(bc);
  if (m_max <= 0) m_max = series_truncation(R, bc, k).m_max;
  std::vector<cdouble> c(static_cast<std::size_t>(m_max) + 1);
  for (int m = 0; m <= m_max; ++m) c[static_cast<std::size_t>(m)] = mode_coefficient(m, R, bc, k);

  const cdouble pref = std::sqrt(2.0 / (kPi * k)) * std::exp(cdouble(0.0, -kPi / 4.0));
  const double theta_d = std::atan2(d.y(), d.x());
  FarFieldPattern p;
  p.k = k;
  p.incident = {d};
  const auto dirs = FarFieldPattern::grid(n_f);
  p.samples.resize(dirs.size());
  for (std::size_t jx = 0; jx < dirs.size(); ++jx) {
    const double phi = 2.0 * kPi * static_cast<double>(jx) / n_f - theta_d;
    cdouble sum = c[0];
    for (int m = 1; m <= m_max; ++m) sum += 2.0 * c[static_cast<std::size_t>(m)] * std::cos(m * phi);
    // Translation relation u_l(x) = exp(i k l.(d - x)) u(x).
    const cdouble shift = std::exp(cdouble(0.0, k * center.dot(d - dirs[jx])));
    p.samples[jx] = shift * pref * sum;
  }
  return p;
}

FarFieldPattern circle_oracle(double R, const Vec2& center, const BoundaryCondition& bc,
                              const PlaneWaveSuperposition& w, int n_f) {
  FarFieldPattern total;
  for (const auto& d : w.directions()) {
    FarFieldPattern p = series_farfield(R, center, bc, w.wavenumber(), d, n_f);
    if (total.samples.empty()) {
      total = std::move(p);
    } else {
      for (std::size_t j = 0; j < p.samples.size(); ++j) total.samples[j] += p.samples[j];
    }
  }
  total.incident = w.directions();
  return total;
}

}  // namespace scatter
