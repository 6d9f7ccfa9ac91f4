#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smoothed2opt/random.hpp"

namespace smoothed2opt {

// Polar-angle model: y is Gaussian in R^d with mean mu and scale sigma, x is
// a fixed point with s = ||x - mu||, and we condition on the radius
// ||x - y|| = r. phi is the angle at x between the ray towards mu and the
// ray towards y, restricted to [0, pi]. The conditional law of phi depends
// on the inputs only through nu = d/2 - 1 and the drift kappa = r*s/sigma^2.
struct AngleContext {
  int d = 2;
  double r = 1.0;
  double s = 0.0;
  double sigma = 1.0;

  double kappa() const { return r * s / (sigma * sigma); }
  double nu() const { return 0.5 * d - 1.0; }
};

void validate_angle_context(const AngleContext& ctx);

// Exact conditional density of phi on [0, pi]:
//   f(phi) = (kappa/2)^nu sin^{2 nu}(phi) e^{kappa cos phi}
//            / (sqrt(pi) Gamma(nu + 1/2) I_nu(kappa)).
// Normalization is self-checked by quadrature once per distinct (d, kappa).
double angle_density(const AngleContext& ctx, double phi);

// max over [0, pi] of angle_density, evaluated in closed form.
double angle_density_sup(const AngleContext& ctx);
// sup over (0, pi) of angle_density(phi) / sin(phi); requires d >= 3.
double angle_density_over_sine_sup(const AngleContext& ctx);

struct OptimalAngle {
  double phi_star;
  double cos_phi_star;
};

// Unique stationary point of the density on (0, pi) for nu > 0, kappa > 0:
//   tan^2(phi*/2) = nu / (sqrt(kappa^2 + nu^2) + kappa),
//   cos(phi*)     = kappa / (sqrt(kappa^2 + nu^2) + nu),
// satisfying sin^2(phi*) = (2 nu / kappa) cos(phi*). nu = 0 degenerates to
// the endpoint maximum phi* = 0.
OptimalAngle optimal_angle(double nu, double kappa);

enum class SupBoundForm {
  plain,      // C1 * (sqrt(d) + sqrt(r s) / sigma), d >= 2
  over_sine,  // C2 * (sqrt(d) + r s / (sigma^2 sqrt(d))), d >= 3
};

// Fitted upper bound for angle_density_sup (plain) or
// angle_density_over_sine_sup (over_sine). The constants dominate the exact
// suprema on the calibration grid d in {2..10}, kappa in [0, 100].
double angle_sup_bound(const AngleContext& ctx, SupBoundForm form);

// Bound for the angle at x between two independent Gaussian points y and z,
// conditioned on r = ||x-y|| and s = ||x-z||; r_bar and s_bar are the
// distances from x to the respective means. The effective drift product is
// min(r * r_bar, s * s_bar), fed through angle_sup_bound's forms.
double pair_angle_sup_bound(int d, double r, double r_bar, double s,
                            double s_bar, double sigma, SupBoundForm form);

// Draws from angle_density. Rejection sampling on t = cos(phi) against a
// wrapped envelope; for kappa > 1e4 the acceptance machinery is replaced by
// a precomputed inverse-CDF grid around the peak, so construct once and
// reuse when drawing in bulk.
class AngleSampler {
 public:
  explicit AngleSampler(const AngleContext& ctx);
  double sample(Rng& rng) const;

 private:
  double rejection_sample(Rng& rng) const;

  AngleContext ctx_;
  double half_m_ = 0.0;  // (d - 1) / 2, the Beta shape of the proposal
  double b_ = 1.0;
  double x0_ = 0.0;
  double log_c_ = 0.0;
  bool use_grid_ = false;
  std::vector<double> grid_phi_;
  std::vector<double> grid_cdf_;
};

double sample_angle(const AngleContext& ctx, std::uint64_t seed);
double sample_angle(const AngleContext& ctx, Rng& rng);

// Branched experiment on a 2-change with the distances held fixed: draw the
// two pivot angles independently, follow the branch whose scaled sine
// sqrt(b_i) sin(phi_i) is larger, and report that branch's "good" angle.
struct RandomExptOutcome {
  int branch;         // 1 or 2
  double good_angle;  // the drawn phi of the winning branch
};

// Pure branch rule on already-drawn angles: branch 1 iff
// sqrt(b1) sin(phi1) > sqrt(b2) sin(phi2).
RandomExptOutcome random_expt_branch(double b1, double b2, double phi1,
                                     double phi2);

RandomExptOutcome random_expt(double b1, double b2, const AngleContext& ctx1,
                              const AngleContext& ctx2, std::uint64_t seed);

// Branch weights (b1, b2) as a function of the ordering of a1, a2, r:
// each b_i is min(a_i, r).
std::pair<double, double> good_eta_branch_params(double a1, double a2,
                                                 double r);

struct EtaDensityBound {
  double value;  // density bound, +infinity at the collinear boundary
  double phi;    // angle realizing eta: arccos((a^2+r^2-(a-eta)^2)/(2ar))
};

// Density bound for eta = a_i - (third side) in a triangle with fixed sides
// a_i and r and random included angle whose density is at most m_phi:
//   ((a_i + r) / (a_i r)) * m_phi / |sin phi(eta)|.
// The reachable interval is [-r, a_i - |a_i - r|]; at its endpoints the
// triangle degenerates, sin phi(eta) = 0, and the bound is +infinity by
// design. eta strictly outside that interval is a domain error.
EtaDensityBound eta_density_bound(double a_i, double r, double eta,
                                  double m_phi);

// Divergence-free form available for d >= 3:
//   C * ((a_i + r) / (a_i r)) * (sqrt(d) + D * min(r, a_i) / sigma^2).
double eta_density_bound_d3(int d, double a_i, double r, double sigma,
                            double big_d);

// Registry of tail and density bounds, each an explicit formula times a
// fitted leading constant. paper_bound_expression evaluates the bare
// formula; paper_bound multiplies in the constant. Missing parameters
// raise std::invalid_argument naming the symbol; ids whose hypotheses
// require d >= 3 (or d >= 4) reject smaller d with std::domain_error.
double paper_bound(const std::string& id,
                   const std::map<std::string, double>& params);
double paper_bound_expression(const std::string& id,
                              const std::map<std::string, double>& params);
double paper_bound_constant(const std::string& id);
std::vector<std::string> paper_bound_ids();

class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Monte Carlo check of the angle-density bound chain at one grid point.
struct McAngleReport {
  int d = 0;
  double s = 0.0;
  double sigma = 0.0;
  double r = 0.0;
  double window = 0.0;       // relative radius window delta
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  std::uint64_t accepted = 0;  // samples inside the radius window
  double ess = 0.0;            // effective sample size of the weights
  double bin_width = 0.0;

  double empirical_sup = 0.0;     // max over histogram bins
  double empirical_argmax = 0.0;  // center of the max bin
  double mode_window_density = 0.0;  // averaged density near the exact mode
  double exact_sup = 0.0;
  double exact_argmax = 0.0;
  double bound = 0.0;
  double tolerance = 0.0;

  bool pass_empirical_vs_exact = false;  // empirical <= exact * (1 + tol)
  bool pass_exact_vs_bound = false;      // exact * (1 + tol) <= bound
};

// Samples y ~ N(mu, sigma^2 I) with ||x - mu|| = s via an importance
// proposal matched to the radius shell, keeps draws with
// ||x - y|| in [r(1-window), r(1+window)], and histograms the angle.
// Work is split into `jobs` deterministic substreams (the result depends on
// jobs, not on the thread count). Throws InsufficientDataError when no
// sample lands in the window.
McAngleReport mc_angle_verify(int d, double s, double sigma, double r,
                              double window, std::uint64_t trials,
                              std::uint64_t seed, int jobs = 8);

std::string mc_report_csv_header();
std::string mc_report_csv_row(const McAngleReport& report);
std::string mc_report_json(const McAngleReport& report);

}  // namespace smoothed2opt
