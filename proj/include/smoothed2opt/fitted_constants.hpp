#pragma once

#include <map>
#include <string>

namespace smoothed2opt {

// Leading constants of the two angle-supremum bounds. Calibrated by grid
// search against the exact closed-form suprema over d in {2,...,10} and
// kappa in [0, 100] (401 log-spaced points plus kappa = 0), then rounded
// up to leave roughly 10% headroom. The grid maxima are recorded next to
// the definitions.
double angle_sup_c1();
double angle_sup_c2();

// Leading constant of the divergence-free eta-density bound for d >= 3,
// calibrated against conditioned Monte Carlo histograms.
double eta_d3_fitted_constant();

// Leading constants of the bound registry, keyed by bound id. Inequalities
// that are exact (no hidden constant) carry 1.0; asymptotic bounds whose
// constants nothing in the lab pins down empirically are normalized to 1.0
// and serve as shape witnesses.
const std::map<std::string, double>& registry_constants();

}  // namespace smoothed2opt
