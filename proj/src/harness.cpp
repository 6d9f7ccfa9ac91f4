#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "smoothed2opt/harness.hpp"
#include "smoothed2opt/linked_pairs.hpp"

namespace smoothed2opt {

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

int clamp_jobs(int jobs) { return std::clamp(jobs, 1, 64); }

// Splits [0, count) into `jobs` contiguous slices and runs fn(begin, end)
// on each in its own thread. Callers make the work order-independent.
void parallel_slices(std::uint64_t count, int jobs,
                     const std::function<void(int, std::uint64_t,
                                              std::uint64_t)>& fn) {
  jobs = clamp_jobs(jobs);
  if (jobs == 1 || count < 2) {
    fn(0, 0, count);
    return;
  }
  std::vector<std::thread> threads;
  const std::uint64_t base = count / jobs, extra = count % jobs;
  std::uint64_t begin = 0;
  for (int w = 0; w < jobs; ++w) {
    std::uint64_t end = begin + base + (static_cast<std::uint64_t>(w) < extra);
    threads.emplace_back([&fn, w, begin, end] { fn(w, begin, end); });
    begin = end;
  }
  for (std::thread& t : threads) t.join();
}

struct WilsonInterval {
  double lo, hi;
};

WilsonInterval wilson95(std::uint64_t hits, std::uint64_t trials) {
  const double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double denom = 1.0 + z * z / n;
  const double center = (p + z * z / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace

void validate_experiment_config(const ExperimentConfig& cfg) {
  if (cfg.n_grid.empty() || cfg.d_grid.empty() || cfg.sigma_grid.empty())
    throw std::invalid_argument("experiment config: all grids must be nonempty");
  for (int n : cfg.n_grid)
    if (n < 4)
      throw std::invalid_argument("experiment config: n must be >= 4");
  for (int d : cfg.d_grid)
    if (d < 2)
      throw std::invalid_argument("experiment config: d must be >= 2");
  for (double s : cfg.sigma_grid)
    if (!(s > 0.0) || s > 1.0)
      throw std::invalid_argument(
          "experiment config: sigma must lie in (0, 1]");
  if (cfg.trials < 1)
    throw std::invalid_argument("experiment config: trials must be >= 1");
  if (cfg.layout == LayoutKind::file)
    throw std::invalid_argument(
        "experiment config: layouts are generated, not loaded; pick "
        "uniform, grid or clustered");
  if (!(cfg.box_c >= 2.0))
    throw std::invalid_argument("experiment config: box constant must be >= 2");
}

std::string experiment_config_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["n_grid"] = cfg.n_grid;
  j["d_grid"] = cfg.d_grid;
  j["sigma_grid"] = cfg.sigma_grid;
  j["layout"] = to_string(cfg.layout);
  j["trials"] = cfg.trials;
  j["pivot"] = to_string(cfg.pivot);
  j["start"] = to_string(cfg.start);
  j["step_limit"] = cfg.step_limit;
  j["seed"] = cfg.seed;
  j["box_c"] = cfg.box_c;
  j["record_timing"] = cfg.record_timing;
  return j.dump(2);
}

ExperimentConfig experiment_config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  }
  if (!j.is_object())
    throw ParseError("experiment config: expected a JSON object");
  static const std::vector<std::string> known = {
      "n_grid", "d_grid", "sigma_grid", "layout",
      "trials", "pivot",  "start",      "step_limit",
      "seed",   "box_c",  "record_timing"};
  for (const auto& item : j.items())
    if (std::find(known.begin(), known.end(), item.key()) == known.end())
      throw ParseError("experiment config: unknown key '" + item.key() + "'");

  ExperimentConfig cfg;
  try {
    cfg.n_grid = j.value("n_grid", cfg.n_grid);
    cfg.d_grid = j.value("d_grid", cfg.d_grid);
    cfg.sigma_grid = j.value("sigma_grid", cfg.sigma_grid);
    if (j.contains("layout"))
      cfg.layout = layout_kind_from_string(j["layout"].get<std::string>());
    cfg.trials = j.value("trials", cfg.trials);
    if (j.contains("pivot"))
      cfg.pivot = pivot_rule_from_string(j["pivot"].get<std::string>());
    if (j.contains("start"))
      cfg.start = initial_tour_kind_from_string(j["start"].get<std::string>());
    cfg.step_limit = j.value("step_limit", cfg.step_limit);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.box_c = j.value("box_c", cfg.box_c);
    cfg.record_timing = j.value("record_timing", cfg.record_timing);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("experiment config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    // Unknown enum names (layout, pivot, start) are parse errors too.
    throw ParseError(std::string("experiment config: ") + e.what());
  }
  validate_experiment_config(cfg);
  return cfg;
}

bool operator==(const IterationRecord& a, const IterationRecord& b) {
  return a.n == b.n && a.d == b.d && a.sigma == b.sigma && a.kind == b.kind &&
         a.trial == b.trial && a.seed == b.seed &&
         a.iterations == b.iterations && a.len_init == b.len_init &&
         a.len_final == b.len_final && a.box_d == b.box_d &&
         a.in_box == b.in_box && a.pivot == b.pivot && a.ms == b.ms;
}

std::vector<IterationRecord> run_iteration_experiment(
    const ExperimentConfig& cfg, int jobs) {
  validate_experiment_config(cfg);
  for (int n : cfg.n_grid)
    if (n > 2000)
      throw std::invalid_argument(
          "experiment cell refused: n = " + std::to_string(n) +
          " exceeds the n <= 2000 guard for O(n^2) exchange scans");

  struct Cell {
    int n, d;
    double sigma;
    AdversarialLayout layout;
  };
  std::vector<Cell> cells;
  std::uint64_t cell_index = 0;
  for (int n : cfg.n_grid)
    for (int d : cfg.d_grid)
      for (double sigma : cfg.sigma_grid) {
        std::uint64_t layout_seed =
            Rng::hash_combine(cfg.seed, Rng::hash_combine(0, cell_index));
        cells.push_back(
            {n, d, sigma, generate_adversarial(cfg.layout, n, d, layout_seed)});
        ++cell_index;
      }

  const std::uint64_t total =
      cells.size() * static_cast<std::uint64_t>(cfg.trials);
  std::vector<IterationRecord> records(total);

  parallel_slices(total, jobs, [&](int, std::uint64_t begin,
                                   std::uint64_t end) {
    for (std::uint64_t k = begin; k < end; ++k) {
      const std::uint64_t ci = k / cfg.trials;
      const int trial = static_cast<int>(k % cfg.trials);
      const Cell& cell = cells[ci];

      const std::uint64_t cell_seed = Rng::hash_combine(cfg.seed, ci);
      const std::uint64_t trial_seed =
          Rng::hash_combine(cell_seed, static_cast<std::uint64_t>(trial) + 1);

      PointSet ps = perturb(cell.layout,
                            {cell.sigma, Rng::hash_combine(trial_seed, 1)});
      Tour start = initial_tour(cfg.start, ps, Rng::hash_combine(trial_seed, 2));

      const auto t0 = std::chrono::steady_clock::now();
      RunTrace trace = run_two_opt(start, ps, cfg.pivot, cfg.step_limit, -1.0,
                                   Rng::hash_combine(trial_seed, 3));
      const auto t1 = std::chrono::steady_clock::now();

      BoxCheck box = bounding_box_check(ps, cfg.box_c);

      IterationRecord rec;
      rec.n = cell.n;
      rec.d = cell.d;
      rec.sigma = cell.sigma;
      rec.kind = cfg.layout;
      rec.trial = trial;
      rec.seed = trial_seed;
      rec.iterations = trace.moves.size();
      rec.len_init = trace.lengths.front();
      rec.len_final = trace.lengths.back();
      rec.box_d = box.D;
      rec.in_box = box.inside;
      rec.pivot = cfg.pivot;
      rec.ms = cfg.record_timing
                   ? std::chrono::duration<double, std::milli>(t1 - t0).count()
                   : 0.0;
      records[k] = rec;
    }
  });
  return records;
}

PotentialCheck potential_bound_check(const RunTrace& trace) {
  if (trace.lengths.empty())
    throw std::invalid_argument("potential bound check: empty trace");
  PotentialCheck out;
  out.actual = static_cast<double>(trace.moves.size());
  if (trace.moves.empty()) {
    out.bound = 0.0;
    out.pass = true;
    return out;
  }
  double min_delta = trace.moves.front().delta;
  for (const TwoChange& m : trace.moves) min_delta = std::min(min_delta, m.delta);
  out.bound = trace.lengths.front() / min_delta;
  out.pass = out.actual <= out.bound;
  return out;
}

std::string to_string(TailQuantity q) {
  switch (q) {
    case TailQuantity::delta_min: return "delta_min";
    case TailQuantity::linked_min_type0: return "linked_min_type0";
    case TailQuantity::linked_min_type1: return "linked_min_type1";
    case TailQuantity::conditioned_single: return "conditioned_single";
  }
  throw std::logic_error("unknown tail quantity");
}

TailQuantity tail_quantity_from_string(const std::string& name) {
  if (name == "delta_min") return TailQuantity::delta_min;
  if (name == "linked_min_type0") return TailQuantity::linked_min_type0;
  if (name == "linked_min_type1") return TailQuantity::linked_min_type1;
  if (name == "conditioned_single") return TailQuantity::conditioned_single;
  throw std::invalid_argument("unknown tail quantity: " + name);
}

InstanceGenerator smoothed_instance_generator(const AdversarialLayout& layout,
                                              double sigma) {
  validate_layout(layout);
  if (!(sigma > 0.0) || sigma > 1.0)
    throw std::invalid_argument("instance generator: sigma must lie in (0, 1]");
  return [layout, sigma](std::uint64_t seed) {
    return perturb(layout, PerturbationSpec{sigma, seed});
  };
}

namespace {

std::optional<double> tail_value(TailQuantity q, const PointSet& ps) {
  switch (q) {
    case TailQuantity::delta_min: {
      auto best = min_improvement(ps);
      if (!best) return std::nullopt;
      return best->delta_min;
    }
    case TailQuantity::linked_min_type0: {
      auto best = min_linked_improvement(ps, LinkedKind::type0);
      if (!best) return std::nullopt;
      return best->delta_sum;
    }
    case TailQuantity::linked_min_type1: {
      auto a = min_linked_improvement(ps, LinkedKind::type1a);
      auto b = min_linked_improvement(ps, LinkedKind::type1b);
      if (!a && !b) return std::nullopt;
      if (!a) return b->delta_sum;
      if (!b) return a->delta_sum;
      return std::min(a->delta_sum, b->delta_sum);
    }
    case TailQuantity::conditioned_single: {
      double gain = delta(ps, 0, 1, 2, 3);
      if (gain <= 0.0) return std::nullopt;
      return gain;
    }
  }
  throw std::logic_error("unknown tail quantity");
}

double tail_reference_exponent(TailQuantity q) {
  switch (q) {
    case TailQuantity::delta_min: return 1.0;
    case TailQuantity::linked_min_type0: return 2.0;
    case TailQuantity::linked_min_type1: return 1.5;
    case TailQuantity::conditioned_single: return 1.0;
  }
  throw std::logic_error("unknown tail quantity");
}

}  // namespace

TailEstimate estimate_tail(TailQuantity quantity, const InstanceGenerator& gen,
                           const std::vector<double>& eps_grid,
                           std::uint64_t trials, std::uint64_t seed,
                           int jobs) {
  if (eps_grid.empty())
    throw std::invalid_argument("tail estimate: eps grid must be nonempty");
  for (std::size_t i = 0; i < eps_grid.size(); ++i) {
    if (!(eps_grid[i] > 0.0))
      throw std::invalid_argument("tail estimate: eps must be positive");
    if (i > 0 && !(eps_grid[i] < eps_grid[i - 1]))
      throw std::invalid_argument(
          "tail estimate: eps grid must be strictly decreasing");
  }
  if (trials < 100)
    throw std::invalid_argument("tail estimate: needs at least 100 trials");

  jobs = clamp_jobs(jobs);
  std::vector<std::vector<std::uint64_t>> worker_hits(
      jobs, std::vector<std::uint64_t>(eps_grid.size(), 0));

  parallel_slices(trials, jobs,
                  [&](int w, std::uint64_t begin, std::uint64_t end) {
                    for (std::uint64_t t = begin; t < end; ++t) {
                      PointSet ps = gen(Rng::hash_combine(seed, t));
                      std::optional<double> value = tail_value(quantity, ps);
                      if (!value) continue;
                      for (std::size_t k = 0; k < eps_grid.size(); ++k)
                        if (*value <= eps_grid[k]) ++worker_hits[w][k];
                    }
                  });

  TailEstimate est;
  est.quantity = quantity;
  est.reference_exponent = tail_reference_exponent(quantity);
  PointSet probe = gen(Rng::hash_combine(seed, 0));
  est.n = probe.n;
  est.d = probe.d;
  est.sigma = probe.provenance ? probe.provenance->spec.sigma : 0.0;

  bool any = false;
  for (std::size_t k = 0; k < eps_grid.size(); ++k) {
    TailCell cell;
    cell.eps = eps_grid[k];
    cell.trials = trials;
    for (int w = 0; w < jobs; ++w) cell.hits += worker_hits[w][k];
    cell.p = static_cast<double>(cell.hits) / static_cast<double>(trials);
    WilsonInterval ci = wilson95(cell.hits, trials);
    cell.ci_lo = ci.lo;
    cell.ci_hi = ci.hi;
    any = any || cell.hits > 0;
    est.cells.push_back(cell);
  }
  if (!any)
    throw InsufficientDataError(
        "tail estimate: no trial produced a value inside any window; widen "
        "the eps grid or add trials");

  // Log-log fit over the tail window only: cells with fewer than 10 hits
  // carry too much Poisson noise, and cells with p above 0.2 sit in the
  // saturated head where the slope is biased toward zero.
  std::vector<double> xs, ys;
  for (const TailCell& cell : est.cells) {
    if (cell.hits < 10 || cell.p > 0.2) continue;
    xs.push_back(std::log(cell.eps));
    ys.push_back(std::log(cell.p));
  }
  if (xs.size() >= 3) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i];
      my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx > 0.0) {
      est.alpha_hat = sxy / sxx;
      est.c_hat = std::exp(my - *est.alpha_hat * mx);
    }
  }
  return est;
}

std::string to_string(ScalingModel model) {
  return model == ScalingModel::iterations_vs_n ? "iterations_vs_n"
                                                : "iterations_vs_inv_sigma";
}

ScalingFit fit_scaling(const std::vector<IterationRecord>& records,
                       ScalingModel model) {
  if (records.empty())
    throw std::invalid_argument("scaling fit: no records");

  std::map<double, std::pair<double, std::uint64_t>> groups;
  for (const IterationRecord& rec : records) {
    double axis = model == ScalingModel::iterations_vs_n
                      ? static_cast<double>(rec.n)
                      : rec.sigma;
    auto& g = groups[axis];
    g.first += static_cast<double>(rec.iterations);
    g.second += 1;
  }

  std::vector<double> xs, ys;
  for (const auto& [axis, g] : groups) {
    double mean = g.first / static_cast<double>(g.second);
    if (!(mean > 0.0)) continue;
    xs.push_back(model == ScalingModel::iterations_vs_n ? std::log(axis)
                                                        : -std::log(axis));
    ys.push_back(std::log(mean));
  }
  if (xs.size() < 3)
    throw std::invalid_argument(
        "scaling fit: needs at least 3 distinct axis values with a positive "
        "mean iteration count");

  const std::size_t m = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0))
    throw std::invalid_argument("scaling fit: degenerate sweep");

  ScalingFit fit;
  fit.model = model;
  fit.points = static_cast<int>(m);
  fit.exponent = sxy / sxx;
  double intercept = my - fit.exponent * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double resid = ys[i] - (intercept + fit.exponent * xs[i]);
    rss += resid * resid;
  }
  fit.std_error = m > 2 ? std::sqrt(rss / (m - 2) / sxx) : 0.0;
  fit.ci_lo = fit.exponent - 1.959963984540054 * fit.std_error;
  fit.ci_hi = fit.exponent + 1.959963984540054 * fit.std_error;

  if (model == ScalingModel::iterations_vs_n) {
    bool planar = std::all_of(records.begin(), records.end(),
                              [](const IterationRecord& r) { return r.d == 2; });
    fit.reference = planar ? 4.0 + 1.0 / 3.0 : 4.0;
  } else {
    fit.reference = 2.0;
  }
  return fit;
}

std::string iteration_csv_header() {
  return "n,d,sigma,kind,trial,seed,iterations,len_init,len_final,D,in_box,"
         "pivot,ms";
}

std::string iteration_csv_row(const IterationRecord& rec) {
  std::string row;
  row += std::to_string(rec.n) + ",";
  row += std::to_string(rec.d) + ",";
  row += fmt_double(rec.sigma) + ",";
  row += to_string(rec.kind) + ",";
  row += std::to_string(rec.trial) + ",";
  row += std::to_string(rec.seed) + ",";
  row += std::to_string(rec.iterations) + ",";
  row += fmt_double(rec.len_init) + ",";
  row += fmt_double(rec.len_final) + ",";
  row += fmt_double(rec.box_d) + ",";
  row += rec.in_box ? "1," : "0,";
  row += to_string(rec.pivot) + ",";
  row += fmt_double(rec.ms);
  return row;
}

std::string iteration_records_csv(const std::vector<IterationRecord>& recs) {
  std::string out = iteration_csv_header() + "\n";
  for (const IterationRecord& rec : recs) out += iteration_csv_row(rec) + "\n";
  return out;
}

std::string tail_csv_header() {
  return "quantity,n,d,sigma,eps,hits,trials,p,ci_lo,ci_hi";
}

std::string tail_estimate_csv(const TailEstimate& est) {
  std::string out = tail_csv_header() + "\n";
  for (const TailCell& cell : est.cells) {
    out += to_string(est.quantity) + ",";
    out += std::to_string(est.n) + ",";
    out += std::to_string(est.d) + ",";
    out += fmt_double(est.sigma) + ",";
    out += fmt_double(cell.eps) + ",";
    out += std::to_string(cell.hits) + ",";
    out += std::to_string(cell.trials) + ",";
    out += fmt_double(cell.p) + ",";
    out += fmt_double(cell.ci_lo) + ",";
    out += fmt_double(cell.ci_hi) + "\n";
  }
  return out;
}

namespace {

nlohmann::json record_to_json(const IterationRecord& rec) {
  nlohmann::json j;
  j["n"] = rec.n;
  j["d"] = rec.d;
  j["sigma"] = rec.sigma;
  j["kind"] = to_string(rec.kind);
  j["trial"] = rec.trial;
  j["seed"] = rec.seed;
  j["iterations"] = rec.iterations;
  j["len_init"] = rec.len_init;
  j["len_final"] = rec.len_final;
  j["D"] = rec.box_d;
  j["in_box"] = rec.in_box;
  j["pivot"] = to_string(rec.pivot);
  j["ms"] = rec.ms;
  return j;
}

IterationRecord record_from_json(const nlohmann::json& j) {
  IterationRecord rec;
  rec.n = j.at("n").get<int>();
  rec.d = j.at("d").get<int>();
  rec.sigma = j.at("sigma").get<double>();
  rec.kind = layout_kind_from_string(j.at("kind").get<std::string>());
  rec.trial = j.at("trial").get<int>();
  rec.seed = j.at("seed").get<std::uint64_t>();
  rec.iterations = j.at("iterations").get<std::uint64_t>();
  rec.len_init = j.at("len_init").get<double>();
  rec.len_final = j.at("len_final").get<double>();
  rec.box_d = j.at("D").get<double>();
  rec.in_box = j.at("in_box").get<bool>();
  rec.pivot = pivot_rule_from_string(j.at("pivot").get<std::string>());
  rec.ms = j.at("ms").get<double>();
  return rec;
}

}  // namespace

std::string iteration_records_json(const ExperimentConfig& cfg,
                                   const std::vector<IterationRecord>& recs) {
  nlohmann::json j;
  j["schema"] = 1;
  j["config"] = nlohmann::json::parse(experiment_config_json(cfg));
  nlohmann::json arr = nlohmann::json::array();
  for (const IterationRecord& rec : recs) arr.push_back(record_to_json(rec));
  j["records"] = std::move(arr);
  return j.dump(2);
}

std::vector<IterationRecord> iteration_records_from_json(
    const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("iteration records: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", 0) != 1 || !j.contains("records"))
    throw ParseError("iteration records: expected a schema-1 envelope");
  std::vector<IterationRecord> recs;
  try {
    for (const nlohmann::json& item : j["records"])
      recs.push_back(record_from_json(item));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("iteration records: ") + e.what());
  }
  return recs;
}

std::string tail_estimate_json(const TailEstimate& est) {
  nlohmann::json j;
  j["schema"] = 1;
  j["kind"] = "tail_estimate";
  j["quantity"] = to_string(est.quantity);
  j["n"] = est.n;
  j["d"] = est.d;
  j["sigma"] = est.sigma;
  j["reference_exponent"] = est.reference_exponent;
  if (est.alpha_hat)
    j["alpha_hat"] = *est.alpha_hat;
  else
    j["alpha_hat"] = nullptr;
  if (est.c_hat)
    j["c_hat"] = *est.c_hat;
  else
    j["c_hat"] = nullptr;
  nlohmann::json cells = nlohmann::json::array();
  for (const TailCell& cell : est.cells) {
    nlohmann::json c;
    c["eps"] = cell.eps;
    c["hits"] = cell.hits;
    c["trials"] = cell.trials;
    c["p"] = cell.p;
    c["ci_lo"] = cell.ci_lo;
    c["ci_hi"] = cell.ci_hi;
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  return j.dump(2);
}

std::string scaling_fit_json(const ScalingFit& fit) {
  nlohmann::json j;
  j["schema"] = 1;
  j["kind"] = "scaling_fit";
  j["model"] = to_string(fit.model);
  j["exponent"] = fit.exponent;
  j["std_error"] = fit.std_error;
  j["ci_lo"] = fit.ci_lo;
  j["ci_hi"] = fit.ci_hi;
  j["points"] = fit.points;
  j["reference"] = fit.reference;
  return j.dump(2);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace smoothed2opt
