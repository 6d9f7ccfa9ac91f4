#pragma once

#include <functional>

#include "smoothed2opt/random.hpp"

namespace smoothed2opt {

// Gamma via a 9-term Lanczos approximation (g = 7); relative error stays
// around 1e-14 on the positive axis, which the bound checks rely on.
double gamma_fn(double x);
// Natural log of Gamma, x > 0. Safe for arguments whose Gamma overflows.
double log_gamma_fn(double x);

struct QuadratureResult {
  double value;
  double error;  // accumulated |Kronrod - Gauss| estimate
};

// Adaptive Gauss-Kronrod 7/15 on [a, b]; bisects until the local error
// estimate drops below the (halved per split) absolute tolerance.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-10);

// Modified Bessel function of the first kind, order nu > -1/2, x >= 0.
// Power series with terms stopped below 1e-16 of the running sum; for
// x > 30 the sum is carried in exponentially scaled form e^{-x} I_nu(x).
// scaled=true returns the scaled value.
double bessel_i(double nu, double x, bool scaled = false);

enum class BesselBound { k0, largex, generic, ratio };

// Fitted constant witnessing the "there exists c > 0" generic lower bound;
// validated by grid search over x in (1, 100], nu in [0, 20].
inline constexpr double kBesselGenericConstant = 0.05;

// Lower bounds on I_nu(x) (or on I_nu/I_{nu-1} for ratio). Hypotheses:
//   k0:      x >= 0, nu > -1/2   value (x/2)^nu / Gamma(nu+1)
//   largex:  x > 1,  nu >= 1/2   value c_nu e^x / sqrt(x)
//   generic: x > 1,  nu >= 0     fitted-constant closed form
//   ratio:   x > 0,  nu >= 1     value (sqrt(x^2+nu^2) - nu) / x
double bessel_lower_bound(BesselBound which, double nu, double x);

// ((sqrt(x^2+y^2)+y) / (sqrt(x^2+(y-1/2)^2)+y-1/2))^y for x >= 0, y >= 1.
// Always <= e; nonincreasing in x.
double simple_inequality_lhs(double x, double y);

struct ChiParams {
  int d;         // dimension >= 2
  double s;      // noncentrality >= 0
  double sigma;  // scale in (0, 1]
};

// Norm of a d-dimensional Gaussian with mean at distance s from the origin
// and covariance sigma^2 I. Central chi when s = 0.
class ChiDistribution {
 public:
  explicit ChiDistribution(const ChiParams& p);

  // Bessel-form density; for s > 0 cross-checked against the Poisson
  // mixture form (1e-8 relative) whenever the mixture series is short.
  double density(double r) const;
  // Poisson mixture over central chi densities of dimension d + 2i.
  double density_mixture(double r) const;

  // Adaptive quadrature of the density over [0, x]; abs error <= 1e-9.
  double cdf(double x) const;

  double sample(Rng& rng) const;

  const ChiParams& params() const { return p_; }

 private:
  double log_density_bessel(double r) const;
  double mode_estimate() const;

  ChiParams p_;
  double lambda_;  // s^2 / (2 sigma^2), the Poisson mixture rate
};

struct InverseMomentResult {
  double value;  // integral of chi_d(x) x^{-c} dx, central chi with scale sigma
  double ratio;  // value * d^{c/2} * sigma^c
};

// Requires 0 <= c < d; the integral diverges at c >= d.
InverseMomentResult chi_inverse_moment(int d, double sigma, double c);

}  // namespace smoothed2opt
