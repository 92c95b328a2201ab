#include "scatter/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace scatter {
namespace {

constexpr double kEuler = 0.57721566490153286061;
constexpr double kRescaleAbove = 1e200;
constexpr double kRescaleBy = 1e-200;

void check_order(int n) {
  if (std::abs(n) > kMaxBesselOrder) {
    throw std::domain_error("Bessel order " + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxBesselOrder));
  }
}

// Even starting index for the backward recurrence so that the neglected
// tail is below double precision for orders up to m = max(nmax, x).
int miller_start(int nmax, double x) {
  const double m = std::max(static_cast<double>(nmax), std::ceil(x));
  int start = static_cast<int>(m + 20.0 + 10.0 * std::cbrt(m + 1.0));
  return start + (start % 2);
}

double sign_of_order(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

std::vector<double> bessel_j_sequence(int nmax, double x) {
  if (x < 0.0) throw std::domain_error("bessel_j: negative argument");
  if (nmax < 0) throw std::domain_error("bessel_j_sequence: negative order");
  check_order(nmax);
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const int start = miller_start(nmax, x);
  double next = 0.0;     // f_{k+1}
  double current = 1e-30;  // f_k
  double norm = 0.0;     // f_0 + 2 * sum f_{2k}
  for (int k = start; k >= 1; --k) {
    if (k <= nmax) out[static_cast<std::size_t>(k)] = current;
    if (k % 2 == 0) norm += 2.0 * current;
    const double prev = (2.0 * k / x) * current - next;
    next = current;
    current = prev;
    if (std::abs(current) > kRescaleAbove) {
      current *= kRescaleBy;
      next *= kRescaleBy;
      norm *= kRescaleBy;
      for (int i = k; i <= nmax; ++i) out[static_cast<std::size_t>(i)] *= kRescaleBy;
    }
  }
  out[0] = current;
  norm += current;
  for (double& v : out) v /= norm;
  return out;
}

Bessel01 bessel_01(double x) {
  if (x <= 0.0) throw std::domain_error("bessel_01: argument must be positive");
  const int start = miller_start(1, x);
  double next = 0.0;
  double current = 1e-30;
  double norm = 0.0;
  // Neumann-series sums, unnormalized:
  //   s0 = sum_{k>=1} (-1)^k f_{2k} / k
  //   s1 = sum_{k>=1} (-1)^k (f_{2k-1} - f_{2k+1}) / k
  double s0 = 0.0;
  double s1 = 0.0;
  double f_plus = 0.0;  // f_{k+1} seen when k is odd
  for (int k = start; k >= 1; --k) {
    if (k % 2 == 0) {
      const int half = k / 2;
      const double sgn = (half % 2 == 0) ? 1.0 : -1.0;
      norm += 2.0 * current;
      s0 += sgn * current / half;
    } else {
      // k = 2j - 1 pairs with f_{2j+1} to contribute to index j = (k+1)/2;
      // f_{2j+1} was stored as f_plus two steps earlier.
      const int j = (k + 1) / 2;
      const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
      s1 += sgn * (current - f_plus) / j;
      f_plus = current;
    }
    const double prev = (2.0 * k / x) * current - next;
    next = current;
    current = prev;
    if (std::abs(current) > kRescaleAbove) {
      current *= kRescaleBy;
      next *= kRescaleBy;
      norm *= kRescaleBy;
      s0 *= kRescaleBy;
      s1 *= kRescaleBy;
      f_plus *= kRescaleBy;
    }
  }
  norm += current;
  const double j0 = current / norm;
  const double j1 = next / norm;
  s0 /= norm;
  s1 /= norm;
  const double log_term = std::log(0.5 * x) + kEuler;
  constexpr double two_over_pi = 2.0 / std::numbers::pi;
  Bessel01 r;
  r.j0 = j0;
  r.j1 = j1;
  r.y0 = two_over_pi * (log_term * j0 - 2.0 * s0);
  r.y1 = two_over_pi * (log_term * j1 - j0 / x + s1);
  return r;
}

std::vector<double> bessel_y_sequence(int nmax, double x) {
  if (x <= 0.0) throw std::domain_error("bessel_y: argument must be positive");
  if (nmax < 0) throw std::domain_error("bessel_y_sequence: negative order");
  check_order(nmax);
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1);
  const Bessel01 b = bessel_01(x);
  out[0] = b.y0;
  if (nmax >= 1) out[1] = b.y1;
  for (int k = 1; k < nmax; ++k) {
    out[static_cast<std::size_t>(k) + 1] =
        (2.0 * k / x) * out[static_cast<std::size_t>(k)] - out[static_cast<std::size_t>(k) - 1];
  }
  return out;
}

double bessel_j(int n, double x) {
  check_order(n);
  if (x < 0.0) throw std::domain_error("bessel_j: negative argument");
  const int m = std::abs(n);
  const double v = bessel_j_sequence(m, x)[static_cast<std::size_t>(m)];
  return n < 0 ? sign_of_order(m) * v : v;
}

double bessel_y(int n, double x) {
  check_order(n);
  if (x <= 0.0) throw std::domain_error("bessel_y: argument must be positive");
  const int m = std::abs(n);
  const double v = bessel_y_sequence(m, x)[static_cast<std::size_t>(m)];
  return n < 0 ? sign_of_order(m) * v : v;
}

cdouble hankel1(int n, double x) {
  if (x <= 0.0) throw std::domain_error("hankel1: argument must be positive");
  return {bessel_j(n, x), bessel_y(n, x)};
}

double bessel_j_prime(int n, double x) {
  return 0.5 * (bessel_j(n - 1, x) - bessel_j(n + 1, x));
}

cdouble hankel1_prime(int n, double x) {
  return 0.5 * (hankel1(n - 1, x) - hankel1(n + 1, x));
}

}  // namespace scatter
