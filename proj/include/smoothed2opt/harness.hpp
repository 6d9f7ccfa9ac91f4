#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "smoothed2opt/angle_lab.hpp"
#include "smoothed2opt/instances.hpp"
#include "smoothed2opt/tour_engine.hpp"

namespace smoothed2opt {

// A grid of experiment cells: every (n, d, sigma) triple times `trials`
// perturbation draws. The adversarial layout is fixed per cell; noise, the
// starting tour and pivot tie-breaks vary per trial through derived seeds.
struct ExperimentConfig {
  std::vector<int> n_grid = {32};
  std::vector<int> d_grid = {2};
  std::vector<double> sigma_grid = {0.5};
  LayoutKind layout = LayoutKind::uniform;
  int trials = 1;
  PivotRule pivot = PivotRule::first;
  InitialTourKind start = InitialTourKind::random;
  std::uint64_t step_limit = UINT64_MAX;
  std::uint64_t seed = 0;
  double box_c = 4.0;
  // Wall-clock capture is off by default so exported files are bit-identical
  // across machines and runs.
  bool record_timing = false;
};

void validate_experiment_config(const ExperimentConfig& cfg);
std::string experiment_config_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const std::string& text);

struct IterationRecord {
  int n = 0;
  int d = 0;
  double sigma = 0.0;
  LayoutKind kind = LayoutKind::uniform;
  int trial = 0;
  std::uint64_t seed = 0;  // derived per-trial seed
  std::uint64_t iterations = 0;
  double len_init = 0.0;
  double len_final = 0.0;
  double box_d = 0.0;
  bool in_box = true;
  PivotRule pivot = PivotRule::first;
  double ms = 0.0;  // 0 unless the config asks for timing
};

bool operator==(const IterationRecord& a, const IterationRecord& b);

// One 2-opt run per (cell, trial), deterministic per cfg.seed. Records are
// ordered by cell then trial regardless of `jobs`. Cells with n > 2000 are
// refused: every run scans O(n^2) candidate exchanges per step.
std::vector<IterationRecord> run_iteration_experiment(
    const ExperimentConfig& cfg, int jobs = 1);

struct PotentialCheck {
  double bound = 0.0;   // initial length / smallest executed improvement
  double actual = 0.0;  // executed move count
  bool pass = true;
};

// Every executed move improves by at least the smallest executed
// improvement, and the total improvement cannot exceed the initial length,
// so actual <= bound holds for any genuine trace.
PotentialCheck potential_bound_check(const RunTrace& trace);

enum class TailQuantity {
  delta_min,          // smallest positive gain over all exchanges
  linked_min_type0,   // smallest gain sum over six-vertex linked pairs
  linked_min_type1,   // same over five-vertex linked pairs (both variants)
  conditioned_single  // gain of the fixed exchange on vertices 0,1,2,3
};

std::string to_string(TailQuantity q);
TailQuantity tail_quantity_from_string(const std::string& name);

struct TailCell {
  double eps = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double p = 0.0;
  double ci_lo = 0.0;  // Wilson 95% interval
  double ci_hi = 0.0;
};

struct TailEstimate {
  TailQuantity quantity = TailQuantity::delta_min;
  int n = 0;
  int d = 0;
  double sigma = 0.0;
  std::vector<TailCell> cells;  // eps strictly decreasing
  // Least-squares fit of log p against log eps over tail-window cells
  // (>= 10 hits, p <= 0.2); absent when fewer than 3 such cells exist.
  std::optional<double> alpha_hat;
  std::optional<double> c_hat;        // multiplier in p ~ c_hat * eps^alpha
  double reference_exponent = 1.0;    // the exponent the bounds predict
};

// Produces the instance for one trial from that trial's derived seed.
using InstanceGenerator = std::function<PointSet(std::uint64_t)>;

// Standard generator: fixed adversarial layout, fresh Gaussian noise per
// trial seed.
InstanceGenerator smoothed_instance_generator(const AdversarialLayout& layout,
                                              double sigma);

// Empirical tail of the chosen quantity on eps_grid (strictly decreasing),
// one exact evaluation per trial. Throws InsufficientDataError when no
// trial lands in even the widest window.
TailEstimate estimate_tail(TailQuantity quantity, const InstanceGenerator& gen,
                           const std::vector<double>& eps_grid,
                           std::uint64_t trials, std::uint64_t seed,
                           int jobs = 1);

enum class ScalingModel { iterations_vs_n, iterations_vs_inv_sigma };

std::string to_string(ScalingModel model);

struct ScalingFit {
  ScalingModel model = ScalingModel::iterations_vs_n;
  double exponent = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;  // 95% band of the slope
  double ci_hi = 0.0;
  int points = 0;      // distinct axis values entering the fit
  // Upper-bound exponent the fit is reported against (never asserted):
  // iterations grow at most like n^{13/3} for d = 2 and n^4 beyond, and
  // like 1/sigma^2 on the noise axis.
  double reference = 0.0;
};

// Log-log least squares of mean iterations against the swept axis. Requires
// at least 3 distinct axis values with a positive mean.
ScalingFit fit_scaling(const std::vector<IterationRecord>& records,
                       ScalingModel model);

std::string iteration_csv_header();
std::string iteration_csv_row(const IterationRecord& rec);
std::string iteration_records_csv(const std::vector<IterationRecord>& recs);

std::string tail_csv_header();
std::string tail_estimate_csv(const TailEstimate& est);

// {"schema": 1, "config": {...}, "records": [...]}
std::string iteration_records_json(const ExperimentConfig& cfg,
                                   const std::vector<IterationRecord>& recs);
std::vector<IterationRecord> iteration_records_from_json(
    const std::string& text);

std::string tail_estimate_json(const TailEstimate& est);
std::string scaling_fit_json(const ScalingFit& fit);

// Writes atomically-enough for our purposes (single writer); throws
// std::runtime_error when the path cannot be opened.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace smoothed2opt
