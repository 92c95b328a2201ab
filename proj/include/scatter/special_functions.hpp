#pragma once

#include <complex>
#include <vector>

namespace scatter {

using cdouble = std::complex<double>;

/// Largest integer order accepted by the Bessel routines.
inline constexpr int kMaxBesselOrder = 200;

double bessel_j(int n, double x);
double bessel_y(int n, double x);
cdouble hankel1(int n, double x);

/// J_0..J_nmax at x via normalized backward recurrence.
std::vector<double> bessel_j_sequence(int nmax, double x);

/// Y_0..Y_nmax at x via upward recurrence (x > 0).
std::vector<double> bessel_y_sequence(int nmax, double x);

/// Derivatives from the recurrence C_n' = (C_{n-1} - C_{n+1}) / 2.
double bessel_j_prime(int n, double x);
cdouble hankel1_prime(int n, double x);

/// Orders 0 and 1 in one pass; this is the hot path of kernel assembly.
struct Bessel01 {
  double j0, j1, y0, y1;
};
Bessel01 bessel_01(double x);

}  // namespace scatter
