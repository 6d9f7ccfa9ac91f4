#include "smoothed2opt/special_math.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace smoothed2opt {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos g = 7, 9 coefficients.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double z) {
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z - 1.0 + i);
  return a;
}

}  // namespace

double gamma_fn(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.5) {
    // Reflection; poles at nonpositive integers surface as inf/nan.
    return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  }
  const double t = x + 6.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) *
         lanczos_sum(x);
}

double log_gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma_fn: requires x > 0");
  if (x < 0.5) return std::log(gamma_fn(x));  // Gamma > 1 here, no overflow
  const double t = x + 6.5;
  return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(t) - t +
         std::log(lanczos_sum(x));
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights (positive half; node 7 is 0).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct GkEstimate {
  double kronrod;
  double err;
};

GkEstimate gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(c - h * kXgk[i]);
    fv[14 - i] = f(c + h * kXgk[i]);
  }
  fv[7] = f(c);
  double kron = 0.0, gauss = 0.0;
  for (int i = 0; i < 7; ++i) kron += kWgk[i] * (fv[i] + fv[14 - i]);
  kron += kWgk[7] * fv[7];
  for (int i = 0; i < 3; ++i)
    gauss += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  gauss += kWg[3] * fv[7];
  return {kron * h, std::abs(kron - gauss) * h};
}

void integrate_rec(const std::function<double(double)>& f, double a, double b,
                   double tol, int depth, QuadratureResult& acc) {
  const GkEstimate e = gk15(f, a, b);
  if (e.err <= tol || depth >= 52) {
    acc.value += e.kronrod;
    acc.error += e.err;
    return;
  }
  const double m = 0.5 * (a + b);
  integrate_rec(f, a, m, 0.5 * tol, depth + 1, acc);
  integrate_rec(f, m, b, 0.5 * tol, depth + 1, acc);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol) {
  QuadratureResult acc{0.0, 0.0};
  if (a == b) return acc;
  integrate_rec(f, a, b, abs_tol, 0, acc);
  return acc;
}

namespace {

// Scaled asymptotic expansion e^{-x} I_nu(x) for very large x, where even
// the scaled power series would underflow at the first term.
double bessel_scaled_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * -(mu - odd * odd) / (8.0 * x * k);
    if (std::abs(next) >= std::abs(term)) break;  // optimal truncation
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * kPi * x);
}

}  // namespace

double bessel_i(double nu, double x, bool scaled) {
  if (!(nu > -0.5))
    throw std::domain_error("bessel_i: order nu must exceed -1/2");
  if (x < 0.0) throw std::domain_error("bessel_i: requires x >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;

  const bool internal_scaled = x > 30.0;
  double value;
  if (x > 500.0) {
    value = bessel_scaled_asymptotic(nu, x);
  } else {
    const double lt0 = nu * std::log(0.5 * x) - log_gamma_fn(nu + 1.0) -
                       (internal_scaled ? x : 0.0);
    double term = std::exp(lt0);
    double sum = term;
    const double q = 0.25 * x * x;
    for (int k = 1; k <= 2000; ++k) {
      term *= q / (k * (k + nu));
      sum += term;
      if (term < 1e-16 * sum) break;
    }
    value = sum;
  }

  const bool value_scaled = internal_scaled || x > 500.0;
  if (scaled) return value_scaled ? value : value * std::exp(-x);
  if (!value_scaled) return value;
  const double lv = std::log(value) + x;
  if (lv > 709.0)
    throw std::range_error(
        "bessel_i: unscaled value overflows; call with scaled=true");
  return std::exp(lv);
}

double bessel_lower_bound(BesselBound which, double nu, double x) {
  // Stable form of sqrt(x^2 + nu^2) - nu.
  const auto root_minus_nu = [](double nu_, double x_) {
    return x_ * x_ / (std::sqrt(x_ * x_ + nu_ * nu_) + nu_);
  };
  switch (which) {
    case BesselBound::k0:
      if (!(x >= 0.0) || !(nu > -0.5))
        throw std::domain_error(
            "bessel_lower_bound(k0): requires x >= 0 and nu > -1/2");
      return std::pow(0.5 * x, nu) / gamma_fn(nu + 1.0);
    case BesselBound::largex: {
      if (!(x > 1.0))
        throw std::domain_error("bessel_lower_bound(largex): requires x > 1");
      if (!(nu >= 0.5))
        throw std::domain_error(
            "bessel_lower_bound(largex): implemented branch requires nu >= "
            "1/2");
      const double c_nu = (1.0 / (nu + 0.5) - 1.0 / (nu + 1.5)) /
                          (std::pow(2.0, nu) * std::sqrt(kPi) *
                           gamma_fn(nu + 0.5));
      return c_nu * std::exp(x) / std::sqrt(x);
    }
    case BesselBound::generic: {
      if (!(x > 1.0))
        throw std::domain_error("bessel_lower_bound(generic): requires x > 1");
      if (!(nu >= 0.0))
        throw std::domain_error(
            "bessel_lower_bound(generic): requires nu >= 0");
      const double root = std::sqrt(x * x + nu * nu);
      return kBesselGenericConstant *
             std::pow(root_minus_nu(nu, x) / x, nu + 0.5) * std::exp(root) /
             std::sqrt(x);
    }
    case BesselBound::ratio:
      if (!(x > 0.0))
        throw std::domain_error("bessel_lower_bound(ratio): requires x > 0");
      if (!(nu >= 1.0))
        throw std::domain_error("bessel_lower_bound(ratio): requires nu >= 1");
      return root_minus_nu(nu, x) / x;
  }
  throw std::invalid_argument("bessel_lower_bound: unknown bound kind");
}

double simple_inequality_lhs(double x, double y) {
  if (!(x >= 0.0) || !(y >= 1.0))
    throw std::domain_error(
        "simple_inequality_lhs: requires x >= 0 and y >= 1");
  const double num = std::sqrt(x * x + y * y) + y;
  const double den = std::sqrt(x * x + (y - 0.5) * (y - 0.5)) + (y - 0.5);
  return std::pow(num / den, y);
}

ChiDistribution::ChiDistribution(const ChiParams& p) : p_(p) {
  if (p_.d < 2) throw std::invalid_argument("ChiDistribution: requires d >= 2");
  if (!(p_.s >= 0.0))
    throw std::invalid_argument("ChiDistribution: requires s >= 0");
  if (!(p_.sigma > 0.0) || !(p_.sigma <= 1.0))
    throw std::invalid_argument("ChiDistribution: requires sigma in (0, 1]");
  lambda_ = 0.5 * p_.s * p_.s / (p_.sigma * p_.sigma);
}

double ChiDistribution::log_density_bessel(double r) const {
  const double sig2 = p_.sigma * p_.sigma;
  if (p_.s == 0.0) {
    return (p_.d - 1) * std::log(r) - 0.5 * r * r / sig2 -
           (0.5 * p_.d - 1.0) * std::numbers::ln2 - log_gamma_fn(0.5 * p_.d) -
           p_.d * std::log(p_.sigma);
  }
  const double nu = 0.5 * p_.d - 1.0;
  const double x = r * p_.s / sig2;
  const double dr = r - p_.s;
  return -0.5 * dr * dr / sig2 + (p_.d - 1) * std::log(r) -
         p_.d * std::log(p_.sigma) - nu * std::log(x) +
         std::log(bessel_i(nu, x, /*scaled=*/true));
}

double ChiDistribution::density(double r) const {
  if (!(r > 0.0)) throw std::domain_error("chi density: requires r > 0");
  const double v = std::exp(log_density_bessel(r));
  // Cross-form consistency assertion, skipped when the mixture series would
  // need an impractical number of terms or both values have underflowed.
  if (p_.s > 0.0 && lambda_ <= 500.0) {
    const double m = density_mixture(r);
    if (v > 1e-290 || m > 1e-290) {
      const double denom = std::max(v, m);
      if (std::abs(v - m) > 1e-8 * denom)
        throw std::logic_error(
            "chi density: Bessel and mixture forms disagree beyond 1e-8");
    }
  }
  return v;
}

double ChiDistribution::density_mixture(double r) const {
  if (!(r > 0.0)) throw std::domain_error("chi density: requires r > 0");
  const double sig2 = p_.sigma * p_.sigma;
  // i = 0 term: e^{-lambda} * central chi_d(r).
  double log_t = -lambda_ + (p_.d - 1) * std::log(r) - 0.5 * r * r / sig2 -
                 (0.5 * p_.d - 1.0) * std::numbers::ln2 -
                 log_gamma_fn(0.5 * p_.d) - p_.d * std::log(p_.sigma);
  double term = std::exp(log_t);
  double sum = term;
  const double rr = r * r / sig2;
  const long max_terms = 200000;
  for (long i = 0; i < max_terms; ++i) {
    // Poisson weight ratio lambda/(i+1); chi_{d+2i} -> chi_{d+2(i+1)} ratio.
    const double ratio =
        (lambda_ / (i + 1.0)) * (0.5 * rr / (0.5 * p_.d + i));
    term *= ratio;
    sum += term;
    if (i > lambda_ && term < 1e-17 * sum) break;
  }
  return sum;
}

double ChiDistribution::mode_estimate() const {
  return std::sqrt(p_.s * p_.s + (p_.d - 1) * p_.sigma * p_.sigma);
}

double ChiDistribution::cdf(double x) const {
  if (!(x >= 0.0)) throw std::domain_error("chi cdf: requires x >= 0");
  if (x == 0.0) return 0.0;
  // Density is negligible beyond s + sigma(sqrt(d) + 14); clamping keeps the
  // adaptive scheme from sampling past the bump and missing it entirely.
  const double hi =
      std::min(x, p_.s + p_.sigma * (std::sqrt(double(p_.d)) + 14.0));
  const auto f = [this](double r) {
    return r > 0.0 ? std::exp(log_density_bessel(r)) : 0.0;
  };
  const double mode = mode_estimate();
  double total = 0.0;
  if (mode > 0.0 && mode < hi) {
    total += integrate(f, 0.0, mode, 0.5e-9).value;
    total += integrate(f, mode, hi, 0.5e-9).value;
  } else {
    total += integrate(f, 0.0, hi, 1e-9).value;
  }
  return std::min(total, 1.0);
}

double ChiDistribution::sample(Rng& rng) const {
  double sq = 0.0;
  for (int i = 0; i < p_.d; ++i) {
    const double z = p_.sigma * rng.normal();
    const double coord = (i == 0) ? p_.s + z : z;
    sq += coord * coord;
  }
  return std::sqrt(sq);
}

InverseMomentResult chi_inverse_moment(int d, double sigma, double c) {
  if (d < 2) throw std::invalid_argument("chi_inverse_moment: requires d >= 2");
  if (!(sigma > 0.0))
    throw std::invalid_argument("chi_inverse_moment: requires sigma > 0");
  if (!(c >= 0.0) || !(c < d))
    throw std::domain_error(
        "chi_inverse_moment: requires 0 <= c < d (integral diverges)");
  // Scale invariance: the sigma-scale moment is sigma^{-c} times the unit
  // moment; integrate at a clamped scale and rescale afterwards.
  const double base_sigma = std::min(sigma, 1.0);
  const auto integrand = [&](double x) {
    if (x <= 0.0) return 0.0;
    const double sig2 = base_sigma * base_sigma;
    const double logd = (d - 1) * std::log(x) - 0.5 * x * x / sig2 -
                        (0.5 * d - 1.0) * std::numbers::ln2 -
                        log_gamma_fn(0.5 * d) - d * std::log(base_sigma);
    return std::exp(logd - c * std::log(x));
  };
  const double hi = base_sigma * (std::sqrt(double(d)) + 14.0);
  const double mode = base_sigma * std::sqrt(double(d - 1));
  double value = integrate(integrand, 0.0, std::min(mode, hi), 0.5e-10).value +
                 integrate(integrand, std::min(mode, hi), hi, 0.5e-10).value;
  value *= std::pow(sigma / base_sigma, -c);
  return {value, value * std::pow(double(d), 0.5 * c) * std::pow(sigma, c)};
}

}  // namespace smoothed2opt
