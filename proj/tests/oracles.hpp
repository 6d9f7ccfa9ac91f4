#pragma once

// Independent oracles used only by tests. Each one reaches the target value
// by a different route than the library (naive long-double series, integral
// representations, closed forms), so agreement is meaningful.

#include <cmath>
#include <optional>
#include <vector>

#include "smoothed2opt/instances.hpp"

namespace oracles {

inline double dist(const smoothed2opt::PointSet& ps, int i, int j) {
  double sum = 0.0;
  for (int k = 0; k < ps.d; ++k) {
    double diff = ps.point(i)[k] - ps.point(j)[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

// Smallest strictly positive gain over every ordered exchange: remove
// {a,z1},{b,z2}, add {a,z2},{b,z1}. Plain quadruple loop, no dedup.
inline std::optional<double> delta_min_bruteforce(
    const smoothed2opt::PointSet& ps) {
  std::optional<double> best;
  for (int a = 0; a < ps.n; ++a)
    for (int z1 = 0; z1 < ps.n; ++z1)
      for (int b = 0; b < ps.n; ++b)
        for (int z2 = 0; z2 < ps.n; ++z2) {
          if (a == z1 || a == b || a == z2 || z1 == b || z1 == z2 || b == z2)
            continue;
          double d = dist(ps, a, z1) + dist(ps, b, z2) - dist(ps, a, z2) -
                     dist(ps, b, z1);
          if (d > 0.0 && (!best || d < *best)) best = d;
        }
  return best;
}

// Literal series sum for I_nu(x) in long double, one lgammal per term.
inline long double bessel_series(long double nu, long double x) {
  long double sum = 0.0L;
  for (int k = 0; k < 500; ++k) {
    const long double lt = (2.0L * k + nu) * std::log(0.5L * x) -
                           std::lgamma((long double)(k + 1)) -
                           std::lgamma(k + nu + 1.0L);
    const long double term = std::exp(lt);
    sum += term;
    if (k > 2 && term < 1e-18L * sum) break;
  }
  return sum;
}

// Integral representation: I_nu(x) = (x/2)^nu / (sqrt(pi) Gamma(nu+1/2))
// * Integral_0^pi e^{x cos t} sin^{2 nu} t dt, evaluated by Simpson panels.
inline long double bessel_integral_repr(long double nu, long double x) {
  const int n = 20000;  // even
  const long double pi = 3.14159265358979323846264338327950288L;
  const long double h = pi / n;
  long double acc = 0.0L;
  for (int i = 0; i <= n; ++i) {
    const long double t = i * h;
    const long double f =
        std::exp(x * std::cos(t)) * std::pow(std::sin(t), 2.0L * nu);
    const long double w = (i == 0 || i == n) ? 1.0L : (i % 2 ? 4.0L : 2.0L);
    acc += w * f;
  }
  acc *= h / 3.0L;
  return std::pow(0.5L * x, nu) /
         (std::sqrt(pi) * std::exp(std::lgamma(nu + 0.5L))) * acc;
}

// E[X^{-c}] for the central chi with d degrees of freedom and scale sigma:
// 2^{-c/2} Gamma((d-c)/2) / Gamma(d/2) * sigma^{-c}.
inline long double chi_inverse_moment_closed(int d, long double sigma,
                                             long double c) {
  return std::exp(-0.5L * c * std::log(2.0L) +
                  std::lgamma(0.5L * (d - c)) - std::lgamma(0.5L * d) -
                  c * std::log(sigma));
}

// Simpson integration of an arbitrary function on [a, b] (smooth f).
template <class F>
long double simpson(F f, long double a, long double b, int n = 20000) {
  const long double h = (b - a) / n;
  long double acc = 0.0L;
  for (int i = 0; i <= n; ++i) {
    const long double t = a + i * h;
    const long double w = (i == 0 || i == n) ? 1.0L : (i % 2 ? 4.0L : 2.0L);
    acc += w * f(t);
  }
  return acc * h / 3.0L;
}

}  // namespace oracles
