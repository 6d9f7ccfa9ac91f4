#include "smoothed2opt/angle_lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include <nlohmann/json.hpp>

#include "smoothed2opt/fitted_constants.hpp"
#include "smoothed2opt/special_math.hpp"

namespace smoothed2opt {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerance used by mc_angle_verify's acceptance flags.
constexpr double kMcTolerance = 0.05;

// Above this drift the rejection envelope is numerically pointless and the
// sampler switches to an inverse-CDF grid around the peak.
constexpr double kGridKappa = 1e4;

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// log of the density with the sin^{2 nu} factor left out, i.e. of
// (kappa/2)^nu e^{kappa cos phi} / (sqrt(pi) Gamma(nu+1/2) I_nu(kappa)),
// written against the scaled Bessel value e^{-kappa} I_nu(kappa) so that
// kappa -> 0 and kappa -> infinity are both stable.
double log_density_base(double nu, double kappa, double phi) {
  if (kappa == 0.0) {
    return log_gamma_fn(nu + 1.0) - log_gamma_fn(nu + 0.5) -
           0.5 * std::log(kPi);
  }
  return nu * std::log(0.5 * kappa) - 0.5 * std::log(kPi) -
         log_gamma_fn(nu + 0.5) -
         std::log(bessel_i(nu, kappa, /*scaled=*/true)) +
         kappa * (std::cos(phi) - 1.0);
}

double log_density(double nu, double kappa, double phi) {
  double base = log_density_base(nu, kappa, phi);
  if (nu > 0.0) {
    double s = std::sin(phi);
    if (s <= 0.0) return -kInf;
    base += 2.0 * nu * std::log(s);
  }
  return base;
}

struct NormMemo {
  int d = -1;
  double kappa = -1.0;
};
thread_local NormMemo g_norm_memo;

// Integrates the density once per distinct (d, kappa) seen on this thread;
// segments around the peak keep the quadrature honest at large kappa.
void normalization_check(const AngleContext& ctx) {
  const double kappa = ctx.kappa();
  if (g_norm_memo.d == ctx.d && g_norm_memo.kappa == kappa) return;

  const double nu = ctx.nu();
  auto f = [&](double phi) { return std::exp(log_density(nu, kappa, phi)); };

  std::vector<double> cuts = {0.0, kPi};
  if (kappa > 0.0) {
    double mode = nu > 0.0 ? optimal_angle(nu, kappa).phi_star : 0.0;
    double width = 1.0 / std::sqrt(kappa + 2.0 * nu + 1.0);
    for (double off : {-10.0, -3.0, 3.0, 10.0}) {
      double c = mode + off * width;
      if (c > 0.0 && c < kPi) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
  }

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += integrate(f, cuts[i], cuts[i + 1], 1e-11).value;

  if (std::abs(total - 1.0) > 1e-8)
    throw std::logic_error(
        "angle_density: normalization self-check failed at d=" +
        std::to_string(ctx.d) + ", kappa=" + fmt_double(kappa));
  g_norm_memo = {ctx.d, kappa};
}

}  // namespace

void validate_angle_context(const AngleContext& ctx) {
  if (ctx.d < 2)
    throw std::invalid_argument("angle context: dimension must be >= 2");
  if (!(ctx.r > 0.0))
    throw std::invalid_argument("angle context: radius r must be positive");
  if (!(ctx.s >= 0.0))
    throw std::invalid_argument(
        "angle context: mean distance s must be nonnegative");
  if (!(ctx.sigma > 0.0))
    throw std::invalid_argument("angle context: sigma must be positive");
}

double angle_density(const AngleContext& ctx, double phi) {
  validate_angle_context(ctx);
  if (!(phi >= 0.0 && phi <= kPi))
    throw std::domain_error("angle_density: phi must lie in [0, pi]");
  normalization_check(ctx);
  return std::exp(log_density(ctx.nu(), ctx.kappa(), phi));
}

double angle_density_sup(const AngleContext& ctx) {
  validate_angle_context(ctx);
  const double nu = ctx.nu();
  const double kappa = ctx.kappa();
  double mode;
  if (nu == 0.0) {
    mode = 0.0;  // density proportional to e^{kappa cos phi}
  } else {
    mode = kappa > 0.0 ? optimal_angle(nu, kappa).phi_star : 0.5 * kPi;
  }
  return std::exp(log_density(nu, kappa, mode));
}

double angle_density_over_sine_sup(const AngleContext& ctx) {
  validate_angle_context(ctx);
  if (ctx.d < 3)
    throw std::domain_error(
        "angle_density_over_sine_sup: requires dimension d >= 3");
  const double nu = ctx.nu();
  const double kappa = ctx.kappa();
  const double m = 2.0 * nu - 1.0;  // sine exponent of density / sin
  double mode;
  if (m == 0.0) {
    mode = 0.0;
  } else {
    mode = kappa > 0.0 ? optimal_angle(0.5 * m, kappa).phi_star : 0.5 * kPi;
  }
  double lg = log_density_base(nu, kappa, mode);
  if (m > 0.0) lg += m * std::log(std::sin(mode));
  return std::exp(lg);
}

OptimalAngle optimal_angle(double nu, double kappa) {
  if (!(kappa > 0.0))
    throw std::domain_error("optimal_angle: kappa must be positive");
  if (nu < 0.0) throw std::invalid_argument("optimal_angle: nu must be >= 0");
  if (nu == 0.0) return {0.0, 1.0};
  const double hyp = std::sqrt(kappa * kappa + nu * nu);
  const double tan_sq_half = nu / (hyp + kappa);
  const double phi = 2.0 * std::atan(std::sqrt(tan_sq_half));
  const double cos_phi = kappa / (hyp + nu);
  return {phi, cos_phi};
}

double angle_sup_bound(const AngleContext& ctx, SupBoundForm form) {
  validate_angle_context(ctx);
  const double drift = ctx.r * ctx.s;
  const double rd = std::sqrt(static_cast<double>(ctx.d));
  if (form == SupBoundForm::plain)
    return angle_sup_c1() * (rd + std::sqrt(drift) / ctx.sigma);
  if (ctx.d < 3)
    throw std::domain_error(
        "angle_sup_bound: the over-sine form requires d >= 3");
  return angle_sup_c2() * (rd + drift / (ctx.sigma * ctx.sigma * rd));
}

double pair_angle_sup_bound(int d, double r, double r_bar, double s,
                            double s_bar, double sigma, SupBoundForm form) {
  if (d < 2) throw std::invalid_argument("pair_angle_sup_bound: d must be >= 2");
  if (!(r > 0.0 && s > 0.0))
    throw std::invalid_argument(
        "pair_angle_sup_bound: conditioned radii must be positive");
  if (!(r_bar >= 0.0 && s_bar >= 0.0))
    throw std::invalid_argument(
        "pair_angle_sup_bound: mean distances must be nonnegative");
  if (!(sigma > 0.0))
    throw std::invalid_argument("pair_angle_sup_bound: sigma must be positive");
  const double drift = std::min(r * r_bar, s * s_bar);
  const double rd = std::sqrt(static_cast<double>(d));
  if (form == SupBoundForm::plain)
    return angle_sup_c1() * (rd + std::sqrt(drift) / sigma);
  if (d < 3)
    throw std::domain_error(
        "pair_angle_sup_bound: the over-sine form requires d >= 3");
  return angle_sup_c2() * (rd + drift / (sigma * sigma * rd));
}

AngleSampler::AngleSampler(const AngleContext& ctx) : ctx_(ctx) {
  validate_angle_context(ctx);
  const double kappa = ctx.kappa();
  const double m = static_cast<double>(ctx.d - 1);
  half_m_ = 0.5 * m;

  if (kappa > kGridKappa) {
    use_grid_ = true;
    const double nu = ctx.nu();
    const double mode =
        nu > 0.0 ? optimal_angle(nu, kappa).phi_star : 0.0;
    const double width = 1.0 / std::sqrt(kappa);
    const double lo = std::max(0.0, mode - 40.0 * width);
    const double hi = std::min(kPi, mode + 40.0 * width);
    const int n = 4097;
    grid_phi_.resize(n);
    grid_cdf_.resize(n);
    std::vector<double> logf(n);
    double peak = -kInf;
    for (int i = 0; i < n; ++i) {
      grid_phi_[i] = lo + (hi - lo) * i / (n - 1);
      logf[i] = log_density(nu, kappa, grid_phi_[i]);
      peak = std::max(peak, logf[i]);
    }
    double acc = 0.0;
    grid_cdf_[0] = 0.0;
    for (int i = 1; i < n; ++i) {
      const double fa = std::exp(logf[i - 1] - peak);
      const double fb = std::exp(logf[i] - peak);
      acc += 0.5 * (fa + fb) * (grid_phi_[i] - grid_phi_[i - 1]);
      grid_cdf_[i] = acc;
    }
    for (int i = 0; i < n; ++i) grid_cdf_[i] /= acc;
    return;
  }

  // Wrapped-proposal rejection on t = cos(phi), target
  // (1 - t^2)^{(m-2)/2} e^{kappa t}. At kappa = 0 the envelope is exact
  // (b = 1) and every draw is accepted.
  b_ = m / (2.0 * kappa + std::sqrt(4.0 * kappa * kappa + m * m));
  x0_ = (1.0 - b_) / (1.0 + b_);
  log_c_ = kappa * x0_ + m * std::log1p(-x0_ * x0_);
}

double AngleSampler::rejection_sample(Rng& rng) const {
  const double kappa = ctx_.kappa();
  const double m = 2.0 * half_m_;
  for (;;) {
    const double z = rng.beta(half_m_, half_m_);
    const double w = (1.0 - (1.0 + b_) * z) / (1.0 - (1.0 - b_) * z);
    const double log_accept = kappa * w + m * std::log1p(-x0_ * w) - log_c_;
    if (log_accept >= std::log(rng.uniform()))
      return std::acos(std::clamp(w, -1.0, 1.0));
  }
}

double AngleSampler::sample(Rng& rng) const {
  if (!use_grid_) return rejection_sample(rng);
  const double u = rng.uniform();
  auto it = std::lower_bound(grid_cdf_.begin(), grid_cdf_.end(), u);
  std::size_t hi = std::min<std::size_t>(it - grid_cdf_.begin(),
                                         grid_cdf_.size() - 1);
  if (hi == 0) return grid_phi_[0];
  const std::size_t lo = hi - 1;
  const double span = grid_cdf_[hi] - grid_cdf_[lo];
  const double frac = span > 0.0 ? (u - grid_cdf_[lo]) / span : 0.5;
  return grid_phi_[lo] + frac * (grid_phi_[hi] - grid_phi_[lo]);
}

double sample_angle(const AngleContext& ctx, Rng& rng) {
  return AngleSampler(ctx).sample(rng);
}

double sample_angle(const AngleContext& ctx, std::uint64_t seed) {
  Rng rng(seed);
  return sample_angle(ctx, rng);
}

RandomExptOutcome random_expt_branch(double b1, double b2, double phi1,
                                     double phi2) {
  if (!(b1 > 0.0 && b2 > 0.0))
    throw std::invalid_argument(
        "random_expt: branch weights must be positive");
  if (std::sqrt(b1) * std::sin(phi1) > std::sqrt(b2) * std::sin(phi2))
    return {1, phi1};
  return {2, phi2};
}

RandomExptOutcome random_expt(double b1, double b2, const AngleContext& ctx1,
                              const AngleContext& ctx2, std::uint64_t seed) {
  if (!(b1 > 0.0 && b2 > 0.0))
    throw std::invalid_argument(
        "random_expt: branch weights must be positive");
  Rng rng(seed);
  AngleSampler s1(ctx1);
  AngleSampler s2(ctx2);
  const double phi1 = s1.sample(rng);
  const double phi2 = s2.sample(rng);
  return random_expt_branch(b1, b2, phi1, phi2);
}

std::pair<double, double> good_eta_branch_params(double a1, double a2,
                                                 double r) {
  if (!(a1 > 0.0 && a2 > 0.0 && r > 0.0))
    throw std::invalid_argument(
        "good_eta_branch_params: distances must be positive");
  return {std::min(a1, r), std::min(a2, r)};
}

EtaDensityBound eta_density_bound(double a_i, double r, double eta,
                                  double m_phi) {
  if (!(a_i > 0.0 && r > 0.0))
    throw std::invalid_argument("eta_density_bound: sides must be positive");
  if (!(m_phi >= 0.0))
    throw std::invalid_argument(
        "eta_density_bound: angle density bound must be nonnegative");
  const double third = a_i - eta;
  // third < 0 never forms a triangle; the squared term below cannot see its
  // sign, so reject it explicitly.
  if (third < 0.0)
    throw std::domain_error(
        "eta_density_bound: eta outside the reachable interval");
  double cos_arg = (a_i * a_i + r * r - third * third) / (2.0 * a_i * r);
  if (cos_arg < -1.0 - 1e-12 || cos_arg > 1.0 + 1e-12)
    throw std::domain_error(
        "eta_density_bound: eta outside the reachable interval");
  cos_arg = std::clamp(cos_arg, -1.0, 1.0);
  const double phi = std::acos(cos_arg);
  const double sin_phi = std::sqrt(std::max(0.0, 1.0 - cos_arg * cos_arg));
  const double scale = (a_i + r) / (a_i * r);
  if (sin_phi == 0.0) return {kInf, phi};
  return {scale * m_phi / sin_phi, phi};
}

double eta_density_bound_d3(int d, double a_i, double r, double sigma,
                            double big_d) {
  if (d < 3)
    throw std::domain_error("eta_density_bound_d3: requires d >= 3");
  if (!(a_i > 0.0 && r > 0.0))
    throw std::invalid_argument(
        "eta_density_bound_d3: sides must be positive");
  if (!(sigma > 0.0) || !(big_d > 0.0))
    throw std::invalid_argument(
        "eta_density_bound_d3: sigma and D must be positive");
  const double scale = (a_i + r) / (a_i * r);
  const double bracket = std::sqrt(static_cast<double>(d)) +
                         big_d * std::min(r, a_i) / (sigma * sigma);
  return eta_d3_fitted_constant() * scale * bracket;
}

namespace {

using Params = std::map<std::string, double>;

double need(const Params& params, const char* name, const std::string& id) {
  auto it = params.find(name);
  if (it == params.end())
    throw std::invalid_argument("paper_bound: id '" + id +
                                "' requires parameter '" + name + "'");
  return it->second;
}

void require_dim(const Params& params, const std::string& id, int dmin) {
  if (need(params, "d", id) < dmin)
    throw std::domain_error("paper_bound: id '" + id + "' requires d >= " +
                            std::to_string(dmin));
}

}  // namespace

double paper_bound_expression(const std::string& id, const Params& params) {
  if (id == "single_cond") {
    const double m1 = need(params, "M1", id), m2 = need(params, "M2", id);
    const double a1 = need(params, "a1", id), a2 = need(params, "a2", id);
    const double r = need(params, "r", id), eps = need(params, "eps", id);
    return kPi * m1 * m2 * eps / (std::min(a1, r) * std::min(a2, r));
  }
  if (id == "good_eta") {
    const double m1 = need(params, "M1", id), m2 = need(params, "M2", id);
    const double a1 = need(params, "a1", id), a2 = need(params, "a2", id);
    const double r = need(params, "r", id), pe = need(params, "p_e", id);
    return 2.0 * kPi * m1 * m2 /
           (pe * std::min(a1, r) * std::min(a2, r));
  }
  if (id == "one_dist_1") {
    const double d = need(params, "d", id), big_d = need(params, "D", id);
    const double sg = need(params, "sigma", id), ai = need(params, "a_i", id);
    const double r = need(params, "r", id), eps = need(params, "eps", id);
    return (std::sqrt(d) * big_d / (sg * sg) + d / std::sqrt(ai * r) +
            d / r +
            std::pow(d, 0.75) * std::sqrt(big_d) / sg *
                (1.0 / std::sqrt(ai) + 1.0 / std::sqrt(r))) *
           eps;
  }
  if (id == "one_dist_3") {
    const double d = need(params, "d", id), big_d = need(params, "D", id);
    const double sg = need(params, "sigma", id), ai = need(params, "a_i", id);
    const double eps = need(params, "eps", id);
    return (std::sqrt(d) * big_d / (sg * sg) +
            std::pow(d, 0.75) * std::sqrt(big_d) / (sg * std::sqrt(ai))) *
           eps;
  }
  if (id == "one_dist_5") {
    const double d = need(params, "d", id), big_d = need(params, "D", id);
    const double sg = need(params, "sigma", id), r = need(params, "r", id);
    const double eps = need(params, "eps", id);
    return (std::sqrt(d) * big_d / (sg * sg) + d / r +
            std::pow(d, 0.75) * std::sqrt(big_d) / (sg * std::sqrt(r))) *
           eps;
  }
  if (id == "type0") {
    const double d = need(params, "d", id), big_d = need(params, "D", id);
    const double n = need(params, "n", id), sg = need(params, "sigma", id);
    const double eps = need(params, "eps", id);
    return d * big_d * big_d * std::pow(n, 6.0) * eps * eps /
           std::pow(sg, 4.0);
  }
  if (id == "type1a_eta") {
    const double d = need(params, "d", id), big_d = need(params, "D", id);
    const double sg = need(params, "sigma", id), ai = need(params, "a_i", id);
    const double eps = need(params, "eps", id);
    return (std::pow(d, 0.25) * std::sqrt(big_d) / sg + std::sqrt(d / ai)) *
           std::sqrt(eps);
  }
  if (id == "type1a" || id == "type1b") {
    const double d = need(params, "d", id), big_d = need(params, "D", id);
    const double n = need(params, "n", id), sg = need(params, "sigma", id);
    const double eps = need(params, "eps", id);
    return std::pow(n, 5.0) * std::pow(d, 0.75) * std::pow(big_d, 1.5) *
           std::pow(eps, 1.5) / std::pow(sg, 3.0);
  }
  if (id == "single_d3") {
    require_dim(params, id, 3);
    const double d = need(params, "d", id), ai = need(params, "a_i", id);
    const double r = need(params, "r", id), big_d = need(params, "D", id);
    const double sg = need(params, "sigma", id), eps = need(params, "eps", id);
    return (std::sqrt(d) / std::min(ai, r) + big_d / (sg * sg)) * eps;
  }
  if (id == "linked_d3") {
    require_dim(params, id, 3);
    const double big_d = need(params, "D", id), n = need(params, "n", id);
    const double sg = need(params, "sigma", id), eps = need(params, "eps", id);
    return big_d * big_d * std::pow(n, 6.0) * eps * eps / std::pow(sg, 4.0);
  }
  if (id == "iters_d2") {
    const double d = need(params, "d", id), big_d = need(params, "D", id);
    const double n = need(params, "n", id), sg = need(params, "sigma", id);
    return d * big_d * big_d * std::pow(n, 4.0 + 1.0 / 3.0) / (sg * sg);
  }
  if (id == "iters_d3") {
    require_dim(params, id, 3);
    const double d = need(params, "d", id), big_d = need(params, "D", id);
    const double n = need(params, "n", id), sg = need(params, "sigma", id);
    return std::sqrt(d) * big_d * big_d * std::pow(n, 4.0) / (sg * sg);
  }
  if (id == "table_small_sigma_d2") {
    const double n = need(params, "n", id), sg = need(params, "sigma", id);
    return std::pow(n, 4.0 + 1.0 / 3.0) / (sg * sg);
  }
  if (id == "table_small_sigma_d3") {
    const double n = need(params, "n", id), sg = need(params, "sigma", id);
    return std::pow(n, 4.0) / (sg * sg);
  }
  if (id == "table_small_sigma_d4") {
    require_dim(params, id, 4);
    const double d = need(params, "d", id), n = need(params, "n", id);
    const double sg = need(params, "sigma", id);
    return std::sqrt(d) * std::pow(n, 4.0) / (sg * sg);
  }
  if (id == "table_large_sigma_d2") {
    const double n = need(params, "n", id);
    return std::pow(n, 5.0 + 1.0 / 3.0) * std::log(n);
  }
  if (id == "table_large_sigma_d3") {
    const double n = need(params, "n", id);
    return std::pow(n, 5.0) * std::log(n);
  }
  if (id == "table_large_sigma_d4") {
    require_dim(params, id, 4);
    const double d = need(params, "d", id), n = need(params, "n", id);
    return std::sqrt(d) * std::pow(n, 5.0) * std::log(n);
  }
  throw std::invalid_argument("paper_bound: unknown bound id '" + id + "'");
}

double paper_bound_constant(const std::string& id) {
  const auto& k = registry_constants();
  auto it = k.find(id);
  if (it == k.end())
    throw std::invalid_argument("paper_bound: unknown bound id '" + id + "'");
  return it->second;
}

double paper_bound(const std::string& id, const Params& params) {
  return paper_bound_constant(id) * paper_bound_expression(id, params);
}

std::vector<std::string> paper_bound_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, unused] : registry_constants()) ids.push_back(id);
  return ids;
}

namespace {

struct McWorkerResult {
  std::vector<double> hist;
  double sum_w = 0.0;
  double sum_w2 = 0.0;
  std::uint64_t accepted = 0;
};

}  // namespace

McAngleReport mc_angle_verify(int d, double s, double sigma, double r,
                              double window, std::uint64_t trials,
                              std::uint64_t seed, int jobs) {
  AngleContext ctx{d, r, s, sigma};
  validate_angle_context(ctx);
  if (!(window > 0.0 && window < 1.0))
    throw std::invalid_argument(
        "mc_angle_verify: window must lie in (0, 1)");
  if (trials == 0)
    throw std::invalid_argument("mc_angle_verify: trials must be positive");
  jobs = std::clamp(jobs, 1, 64);

  const double kappa = ctx.kappa();
  const double nu = ctx.nu();

  // Importance proposal N(t e1, sq I): the tilt t = s*sq/sigma^2 makes the
  // weight a function of the radius alone, and sq solves t^2 + d*sq = r^2
  // so the proposal's radius concentrates on the conditioning shell.
  const double s2 = s * s, sg2 = sigma * sigma;
  const double sq =
      2.0 * r * r / (d + std::sqrt(d * d + 4.0 * r * r * s2 / (sg2 * sg2)));
  const double tilt = s * sq / sg2;
  const auto log_weight = [&](double rho) {
    return rho * rho * (0.5 / sq - 0.5 / sg2) + tilt * tilt * 0.5 / sq -
           s2 * 0.5 / sg2 + 0.5 * d * std::log(sq / sg2);
  };
  const double log_w_ref = log_weight(r);

  const double sigma_peak = 1.0 / std::sqrt(kappa + d);
  double bin_width = std::min(kPi / 24.0, 0.5 * sigma_peak);
  const int nbins = std::clamp(
      static_cast<int>(std::ceil(kPi / bin_width)), 24, 4096);
  bin_width = kPi / nbins;

  std::vector<McWorkerResult> results(jobs);
  const Rng root(seed);
  auto worker = [&](int w, std::uint64_t count) {
    McWorkerResult res;
    res.hist.assign(nbins, 0.0);
    Rng rng = root.fork(static_cast<std::uint64_t>(w) + 1);
    for (std::uint64_t i = 0; i < count; ++i) {
      double rho2 = 0.0;
      double y1 = tilt + std::sqrt(sq) * rng.normal();
      rho2 += y1 * y1;
      for (int k = 1; k < d; ++k) {
        const double yk = std::sqrt(sq) * rng.normal();
        rho2 += yk * yk;
      }
      const double rho = std::sqrt(rho2);
      if (std::abs(rho - r) > window * r) continue;
      const double phi = std::acos(std::clamp(y1 / rho, -1.0, 1.0));
      const double wgt = std::exp(log_weight(rho) - log_w_ref);
      int bin = std::min(static_cast<int>(phi / bin_width), nbins - 1);
      res.hist[bin] += wgt;
      res.sum_w += wgt;
      res.sum_w2 += wgt * wgt;
      ++res.accepted;
    }
    results[w] = std::move(res);
  };

  {
    std::vector<std::thread> threads;
    const std::uint64_t base = trials / jobs;
    const std::uint64_t extra = trials % jobs;
    for (int w = 0; w < jobs; ++w) {
      const std::uint64_t count =
          base + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
      threads.emplace_back(worker, w, count);
    }
    for (auto& t : threads) t.join();
  }

  std::vector<double> hist(nbins, 0.0);
  double sum_w = 0.0, sum_w2 = 0.0;
  std::uint64_t accepted = 0;
  for (const auto& res : results) {
    for (int i = 0; i < nbins; ++i) hist[i] += res.hist[i];
    sum_w += res.sum_w;
    sum_w2 += res.sum_w2;
    accepted += res.accepted;
  }

  if (accepted == 0)
    throw InsufficientDataError(
        "mc_angle_verify: no samples fell inside the radius window; "
        "increase the window or the number of trials");

  McAngleReport rep;
  rep.d = d;
  rep.s = s;
  rep.sigma = sigma;
  rep.r = r;
  rep.window = window;
  rep.trials = trials;
  rep.seed = seed;
  rep.accepted = accepted;
  rep.ess = sum_w * sum_w / sum_w2;
  rep.bin_width = bin_width;

  for (int i = 0; i < nbins; ++i) {
    const double dens = hist[i] / (sum_w * bin_width);
    if (dens > rep.empirical_sup) {
      rep.empirical_sup = dens;
      rep.empirical_argmax = (i + 0.5) * bin_width;
    }
  }

  rep.exact_sup = angle_density_sup(ctx);
  if (nu > 0.0) {
    rep.exact_argmax =
        kappa > 0.0 ? optimal_angle(nu, kappa).phi_star : 0.5 * kPi;
  } else {
    rep.exact_argmax = kappa > 0.0 ? 0.0 : 0.5 * kPi;
  }
  rep.bound = angle_sup_bound(ctx, SupBoundForm::plain);
  rep.tolerance = kMcTolerance;

  // Average density over a window around the exact mode; smoother than the
  // single max bin, used for the conditioning-bias drift check.
  const double half = std::max(2.0 * bin_width, sigma_peak);
  const double lo = std::max(0.0, rep.exact_argmax - half);
  const double hi = std::min(kPi, rep.exact_argmax + half);
  double mass = 0.0;
  for (int i = 0; i < nbins; ++i) {
    const double center = (i + 0.5) * bin_width;
    if (center >= lo && center <= hi) mass += hist[i];
  }
  if (hi > lo) rep.mode_window_density = mass / (sum_w * (hi - lo));

  rep.pass_empirical_vs_exact =
      rep.empirical_sup <= rep.exact_sup * (1.0 + rep.tolerance);
  rep.pass_exact_vs_bound =
      rep.exact_sup * (1.0 + rep.tolerance) <= rep.bound;
  return rep;
}

std::string mc_report_csv_header() {
  return "d,s,sigma,r,window,trials,accepted,ess,empirical_sup,exact_sup,"
         "bound,margin,pass";
}

std::string mc_report_csv_row(const McAngleReport& rep) {
  const bool pass = rep.pass_empirical_vs_exact && rep.pass_exact_vs_bound;
  std::string row;
  row += std::to_string(rep.d) + ",";
  row += fmt_double(rep.s) + ",";
  row += fmt_double(rep.sigma) + ",";
  row += fmt_double(rep.r) + ",";
  row += fmt_double(rep.window) + ",";
  row += std::to_string(rep.trials) + ",";
  row += std::to_string(rep.accepted) + ",";
  row += fmt_double(rep.ess) + ",";
  row += fmt_double(rep.empirical_sup) + ",";
  row += fmt_double(rep.exact_sup) + ",";
  row += fmt_double(rep.bound) + ",";
  row += fmt_double(rep.bound - rep.empirical_sup) + ",";
  row += pass ? "1" : "0";
  return row;
}

std::string mc_report_json(const McAngleReport& rep) {
  nlohmann::json j;
  j["schema"] = 1;
  j["kind"] = "mc_angle_verify";
  j["d"] = rep.d;
  j["s"] = rep.s;
  j["sigma"] = rep.sigma;
  j["r"] = rep.r;
  j["window"] = rep.window;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["accepted"] = rep.accepted;
  j["ess"] = rep.ess;
  j["bin_width"] = rep.bin_width;
  j["empirical_sup"] = rep.empirical_sup;
  j["empirical_argmax"] = rep.empirical_argmax;
  j["mode_window_density"] = rep.mode_window_density;
  j["exact_sup"] = rep.exact_sup;
  j["exact_argmax"] = rep.exact_argmax;
  j["bound"] = rep.bound;
  j["tolerance"] = rep.tolerance;
  j["pass_empirical_vs_exact"] = rep.pass_empirical_vs_exact;
  j["pass_exact_vs_bound"] = rep.pass_exact_vs_bound;
  return j.dump(2);
}

}  // namespace smoothed2opt
