#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "smoothed2opt/angle_lab.hpp"
#include "smoothed2opt/harness.hpp"
#include "smoothed2opt/linked_pairs.hpp"
#include "smoothed2opt/special_math.hpp"

namespace {

using namespace smoothed2opt;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

int default_jobs() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Progress and config echo go to standard error; data goes to standard
// output or to files, so pipelines stay clean.
void echo_config(const nlohmann::json& j) {
  std::cerr << "config: " << j.dump() << "\n";
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text_file(out, text);
}

FileFormat file_format_from_string(const std::string& name) {
  if (name == "json") return FileFormat::native_json;
  if (name == "tsplib") return FileFormat::tsplib_euc2d;
  throw std::invalid_argument("unknown file format: " + name);
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
  std::string kind = "uniform";
  int n = 32;
  int d = 2;
  double sigma = 0.0;  // 0 = save the unperturbed layout
  std::uint64_t seed = 0;
  std::string out = "instance.json";
  std::string format = "json";
};

int cmd_gen(const GenArgs& a) {
  echo_config({{"subcommand", "gen"},
               {"kind", a.kind},
               {"n", a.n},
               {"d", a.d},
               {"sigma", a.sigma},
               {"seed", a.seed},
               {"out", a.out},
               {"format", a.format}});
  AdversarialLayout layout =
      generate_adversarial(layout_kind_from_string(a.kind), a.n, a.d, a.seed);
  PointSet ps;
  if (a.sigma > 0.0) {
    ps = perturb(layout, {a.sigma, Rng::hash_combine(a.seed, 1)});
  } else {
    ps.n = layout.n;
    ps.d = layout.d;
    ps.coords = layout.coords;
  }
  save_instance(ps, a.out, file_format_from_string(a.format));
  std::cerr << "wrote " << a.out << " (" << ps.n << " points, d = " << ps.d
            << ")\n";
  return 0;
}

// -------------------------------------------------------------- solve ----

struct SolveArgs {
  std::string in;
  std::string format = "json";
  std::string pivot = "first";
  std::string start = "identity";
  std::uint64_t step_limit = UINT64_MAX;
  std::uint64_t seed = 0;
  std::string trace;
};

int cmd_solve(const SolveArgs& a) {
  echo_config({{"subcommand", "solve"},
               {"in", a.in},
               {"format", a.format},
               {"pivot", a.pivot},
               {"start", a.start},
               {"step_limit", a.step_limit},
               {"seed", a.seed},
               {"trace", a.trace}});
  PointSet ps = load_instance(a.in, file_format_from_string(a.format));
  Tour start = initial_tour(initial_tour_kind_from_string(a.start), ps,
                            Rng::hash_combine(a.seed, 2));
  RunTrace trace =
      run_two_opt(start, ps, pivot_rule_from_string(a.pivot), a.step_limit,
                  -1.0, Rng::hash_combine(a.seed, 3));
  if (!a.trace.empty()) write_text_file(a.trace, run_trace_json(trace));
  std::cout << "iterations=" << trace.moves.size()
            << " len_init=" << fmt(trace.lengths.front())
            << " len_final=" << fmt(trace.lengths.back())
            << " termination=" << to_string(trace.termination) << "\n";
  return 0;
}

// -------------------------------------------------------------- pairs ----

struct PairsArgs {
  std::string in;
  std::string kind = "uniform";
  int n = 8;
  int d = 2;
  double sigma = 0.5;
  std::uint64_t seed = 0;
  std::string out = "-";
};

int cmd_pairs(const PairsArgs& a) {
  echo_config({{"subcommand", "pairs"},
               {"in", a.in},
               {"kind", a.kind},
               {"n", a.n},
               {"d", a.d},
               {"sigma", a.sigma},
               {"seed", a.seed},
               {"out", a.out}});
  PointSet ps;
  if (!a.in.empty()) {
    ps = load_instance(a.in, FileFormat::native_json);
  } else {
    AdversarialLayout layout =
        generate_adversarial(layout_kind_from_string(a.kind), a.n, a.d, a.seed);
    ps = perturb(layout, {a.sigma, Rng::hash_combine(a.seed, 1)});
  }
  emit(a.out, pair_census_json(ps) + "\n");
  return 0;
}

// -------------------------------------------------------- verify-math ----

struct CheckRow {
  std::string name;
  int points = 0;
  double worst_margin = 0.0;  // >= 0 means the group holds
  bool pass = false;
};

CheckRow group(const std::string& name) {
  CheckRow row;
  row.name = name;
  row.worst_margin = 1e300;
  return row;
}

void track(CheckRow& row, double margin) {
  row.points += 1;
  row.worst_margin = std::min(row.worst_margin, margin);
}

void finish(CheckRow& row, std::vector<CheckRow>& rows) {
  row.pass = row.points > 0 && row.worst_margin >= 0.0;
  rows.push_back(row);
}

std::vector<CheckRow> verify_math_grid(bool fast) {
  std::vector<CheckRow> rows;
  std::vector<double> xs = {1.1, 1.5, 2.0, 5.0, 10.0, 50.0, 100.0};
  std::vector<double> nus = {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  if (fast) {
    xs = {1.5, 10.0, 100.0};
    nus = {0.0, 1.0, 10.0};
  }

  CheckRow k0 = group("bessel_k0");
  for (double x : {0.0, 0.5, 1.0}) track(k0, bessel_i(1.0, x) - bessel_lower_bound(BesselBound::k0, 1.0, x));
  for (double x : xs)
    for (double nu : nus)
      track(k0, bessel_i(nu, x) - bessel_lower_bound(BesselBound::k0, nu, x));
  finish(k0, rows);

  CheckRow largex = group("bessel_largex");
  for (double x : xs)
    for (double nu : nus)
      if (nu >= 0.5)
        track(largex,
              bessel_i(nu, x) - bessel_lower_bound(BesselBound::largex, nu, x));
  finish(largex, rows);

  CheckRow generic = group("bessel_generic");
  for (double x : xs)
    for (double nu : nus)
      track(generic,
            bessel_i(nu, x) - bessel_lower_bound(BesselBound::generic, nu, x));
  finish(generic, rows);

  CheckRow ratio = group("bessel_ratio");
  for (double x : xs)
    for (double nu : nus)
      if (nu >= 1.0)
        track(ratio, bessel_i(nu, x) / bessel_i(nu - 1.0, x) -
                         bessel_lower_bound(BesselBound::ratio, nu, x));
  finish(ratio, rows);

  CheckRow simple = group("simple_inequality");
  const double e = std::exp(1.0);
  const int sx = fast ? 6 : 26, sy = fast ? 5 : 20;
  for (int i = 0; i < sx; ++i)
    for (int j = 0; j < sy; ++j) {
      double x = 50.0 * i / (sx - 1);
      double y = 1.0 + 19.0 * j / (sy - 1);
      track(simple, e - simple_inequality_lhs(x, y));
    }
  finish(simple, rows);

  std::vector<int> ds = fast ? std::vector<int>{2, 4, 10}
                             : std::vector<int>{2, 3, 4, 7, 10, 16};
  std::vector<double> sigmas = {0.25, 1.0};
  std::vector<double> ss = {0.0, 0.5, 2.0};

  CheckRow forms = group("chi_density_forms");
  CheckRow norm = group("chi_normalization");
  CheckRow dom = group("chi_cdf_dominance");
  for (int d : ds)
    for (double sigma : sigmas)
      for (double s : ss) {
        ChiDistribution chi({d, s, sigma});
        const double scale = s + sigma * std::sqrt(static_cast<double>(d));
        for (double c : {0.5, 1.0, 1.6}) {
          double r = c * scale;
          double a = chi.density(r);
          double b = chi.density_mixture(r);
          double rel = std::abs(a - b) / std::max(std::abs(a), 1e-300);
          track(forms, 1e-8 - rel);
        }
        track(norm, 1e-8 - std::abs(1.0 - chi.cdf(s + 12.0 * sigma *
                                                  std::sqrt(static_cast<double>(d)))));
        if (s > 0.0) {
          ChiDistribution central({d, 0.0, sigma});
          for (double c : {0.5, 1.0, 2.0}) {
            double x = c * sigma * std::sqrt(static_cast<double>(d));
            track(dom, central.cdf(x) - chi.cdf(x) + 1e-9);
          }
        }
      }
  finish(forms, rows);
  finish(norm, rows);
  finish(dom, rows);

  CheckRow invm = group("chi_inverse_moment");
  for (int d : {3, 4, 8, 12, 20})
    for (double c : {0.5, 1.0, 2.0}) {
      double r = chi_inverse_moment(d, 1.0, c).ratio;
      // d = 3, c = 2 lands exactly on the upper band edge; allow the
      // quadrature tolerance so float noise cannot flip the sign.
      track(invm, std::min(r - 0.3, 3.0 - r) + 1e-9);
    }
  finish(invm, rows);

  CheckRow inve = group("chi_inverse_exact");
  track(inve, 1e-10 - std::abs(chi_inverse_moment(4, 1.0, 2.0).value - 0.5));
  finish(inve, rows);

  std::vector<int> ads = fast ? std::vector<int>{2, 3, 7}
                              : std::vector<int>{2, 3, 5, 7, 10};
  std::vector<double> kappas = fast ? std::vector<double>{0.0, 2.0, 100.0}
                                    : std::vector<double>{0.0, 0.5, 2.0, 10.0, 100.0};

  CheckRow anorm = group("angle_normalization");
  CheckRow astat = group("angle_stationarity");
  CheckRow asup = group("angle_sup_plain");
  CheckRow asine = group("angle_sup_over_sine");
  const double pi = 3.14159265358979323846;
  for (int d : ads)
    for (double kappa : kappas) {
      AngleContext ctx;
      ctx.d = d;
      ctx.sigma = 1.0;
      ctx.s = kappa > 0.0 ? 1.0 : 0.0;
      ctx.r = kappa > 0.0 ? kappa : 1.0;
      QuadratureResult q = integrate(
          [&](double phi) { return angle_density(ctx, phi); }, 0.0, pi);
      track(anorm, 1e-8 - std::abs(1.0 - q.value));
      if (ctx.nu() > 0.0 && kappa > 0.0) {
        OptimalAngle opt = optimal_angle(ctx.nu(), kappa);
        double sin2 = 1.0 - opt.cos_phi_star * opt.cos_phi_star;
        track(astat, 1e-12 - std::abs(sin2 - (2.0 * ctx.nu() / kappa) *
                                                 opt.cos_phi_star));
      }
      track(asup,
            angle_sup_bound(ctx, SupBoundForm::plain) - angle_density_sup(ctx));
      if (d >= 3)
        track(asine, angle_sup_bound(ctx, SupBoundForm::over_sine) -
                         angle_density_over_sine_sup(ctx));
    }
  finish(anorm, rows);
  finish(astat, rows);
  finish(asup, rows);
  finish(asine, rows);
  return rows;
}

struct VerifyMathArgs {
  std::string grid = "default";
  std::string out = "-";
};

int cmd_verify_math(const VerifyMathArgs& a) {
  echo_config({{"subcommand", "verify-math"}, {"grid", a.grid}, {"out", a.out}});
  std::vector<CheckRow> rows = verify_math_grid(a.grid == "fast");
  std::string text = "check,points,worst_margin,pass\n";
  bool all_pass = true;
  for (const CheckRow& row : rows) {
    text += row.name + "," + std::to_string(row.points) + "," +
            fmt(row.worst_margin) + "," + (row.pass ? "1" : "0") + "\n";
    all_pass = all_pass && row.pass;
  }
  emit(a.out, text);
  std::cerr << (all_pass ? "all bound checks hold\n"
                         : "bound violation detected\n");
  return all_pass ? 0 : 2;
}

// ----------------------------------------------------------- angle-mc ----

struct AngleMcArgs {
  int d = 3;
  double s = 1.0;
  double sigma = 0.5;
  double r = 1.0;
  double window = 0.05;
  std::uint64_t trials = 200000;
  std::uint64_t seed = 0;
  int jobs = default_jobs();
  std::string format = "json";
  std::string out = "-";
};

int cmd_angle_mc(const AngleMcArgs& a) {
  echo_config({{"subcommand", "angle-mc"},
               {"d", a.d},
               {"s", a.s},
               {"sigma", a.sigma},
               {"r", a.r},
               {"window", a.window},
               {"trials", a.trials},
               {"seed", a.seed},
               {"jobs", a.jobs},
               {"format", a.format},
               {"out", a.out}});
  McAngleReport rep =
      mc_angle_verify(a.d, a.s, a.sigma, a.r, a.window, a.trials, a.seed, a.jobs);
  if (a.format == "csv")
    emit(a.out, mc_report_csv_header() + "\n" + mc_report_csv_row(rep) + "\n");
  else
    emit(a.out, mc_report_json(rep) + "\n");
  const bool pass = rep.pass_empirical_vs_exact && rep.pass_exact_vs_bound;
  std::cerr << "empirical_sup=" << fmt(rep.empirical_sup)
            << " exact_sup=" << fmt(rep.exact_sup) << " bound=" << fmt(rep.bound)
            << (pass ? " pass\n" : " FAIL\n");
  return pass ? 0 : 2;
}

// --------------------------------------------------------------- tail ----

// The library CSV keeps the fixed cell columns; the command appends the
// fitted exponent so a single file carries the whole estimate.
std::string tail_csv_with_alpha(const TailEstimate& est) {
  std::istringstream in(tail_estimate_csv(est));
  std::ostringstream out;
  std::string line;
  std::getline(in, line);
  out << line << ",alpha_hat\n";
  const std::string alpha = est.alpha_hat ? fmt(*est.alpha_hat) : "";
  while (std::getline(in, line)) out << line << "," << alpha << "\n";
  return out.str();
}

struct TailArgs {
  std::string quantity;
  int n = 6;
  int d = 2;
  double sigma = 0.5;
  std::string kind = "uniform";
  std::vector<double> eps;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t layout_seed = 0;
  bool layout_seed_set = false;
  int jobs = default_jobs();
  std::string format = "csv";
  std::string out = "-";
};

int cmd_tail(const TailArgs& a) {
  std::vector<double> eps = a.eps;
  if (eps.empty())
    for (int k = 0; k < 6; ++k) eps.push_back(std::pow(10.0, -1.0 - 0.5 * k));
  const std::uint64_t layout_seed = a.layout_seed_set ? a.layout_seed : a.seed;
  echo_config({{"subcommand", "tail"},
               {"quantity", a.quantity},
               {"n", a.n},
               {"d", a.d},
               {"sigma", a.sigma},
               {"kind", a.kind},
               {"eps", eps},
               {"trials", a.trials},
               {"seed", a.seed},
               {"layout_seed", layout_seed},
               {"jobs", a.jobs},
               {"format", a.format},
               {"out", a.out}});
  AdversarialLayout layout = generate_adversarial(
      layout_kind_from_string(a.kind), a.n, a.d, layout_seed);
  TailEstimate est =
      estimate_tail(tail_quantity_from_string(a.quantity),
                    smoothed_instance_generator(layout, a.sigma), eps, a.trials,
                    a.seed, a.jobs);
  emit(a.out, a.format == "json" ? tail_estimate_json(est) + "\n"
                                 : tail_csv_with_alpha(est));
  std::cerr << "alpha_hat="
            << (est.alpha_hat ? fmt(*est.alpha_hat) : std::string("n/a"))
            << " reference=" << fmt(est.reference_exponent) << "\n";
  return 0;
}

// --------------------------------------------------------- experiment ----

struct ExperimentArgs {
  std::string config;
  std::vector<int> n;
  std::vector<int> d;
  std::vector<double> sigma;
  std::string kind;
  int trials = 0;
  std::string pivot;
  std::string start;
  std::uint64_t step_limit = 0;
  bool step_limit_set = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double box_c = 0.0;
  bool timing = false;
  int jobs = default_jobs();
  std::string out = "experiment";
};

int cmd_experiment(const ExperimentArgs& a) {
  ExperimentConfig cfg;
  if (!a.config.empty())
    cfg = experiment_config_from_json(read_text_file(a.config));
  // Flags win over the config file.
  if (!a.n.empty()) cfg.n_grid = a.n;
  if (!a.d.empty()) cfg.d_grid = a.d;
  if (!a.sigma.empty()) cfg.sigma_grid = a.sigma;
  if (!a.kind.empty()) cfg.layout = layout_kind_from_string(a.kind);
  if (a.trials > 0) cfg.trials = a.trials;
  if (!a.pivot.empty()) cfg.pivot = pivot_rule_from_string(a.pivot);
  if (!a.start.empty()) cfg.start = initial_tour_kind_from_string(a.start);
  if (a.step_limit_set) cfg.step_limit = a.step_limit;
  if (a.seed_set) cfg.seed = a.seed;
  if (a.box_c > 0.0) cfg.box_c = a.box_c;
  if (a.timing) cfg.record_timing = true;
  validate_experiment_config(cfg);
  std::cerr << "config: " << experiment_config_json(cfg) << "\n";

  std::vector<IterationRecord> records = run_iteration_experiment(cfg, a.jobs);
  write_text_file(a.out + ".csv", iteration_records_csv(records));
  write_text_file(a.out + ".json", iteration_records_json(cfg, records));
  std::cerr << "wrote " << a.out << ".csv and " << a.out << ".json ("
            << records.size() << " records)\n";

  std::uint64_t outside = 0;
  for (const IterationRecord& rec : records) outside += rec.in_box ? 0 : 1;
  std::cerr << "box flags: " << outside << "/" << records.size()
            << " outside (reference failure rate 1/n!)\n";

  nlohmann::json fits = nlohmann::json::array();
  for (ScalingModel model : {ScalingModel::iterations_vs_n,
                             ScalingModel::iterations_vs_inv_sigma}) {
    try {
      ScalingFit fit = fit_scaling(records, model);
      fits.push_back(nlohmann::json::parse(scaling_fit_json(fit)));
      std::cerr << "fit " << to_string(model) << ": exponent="
                << fmt(fit.exponent) << " ci=[" << fmt(fit.ci_lo) << ","
                << fmt(fit.ci_hi) << "] reference=" << fmt(fit.reference)
                << "\n";
    } catch (const std::invalid_argument&) {
      // Axis not swept; nothing to fit.
    }
  }
  if (!fits.empty()) {
    write_text_file(a.out + "_fits.json", fits.dump(2));
    std::cerr << "wrote " << a.out << "_fits.json\n";
  }
  return 0;
}

// ------------------------------------------------------------- export ----

struct ExportArgs {
  std::string in;
  std::string format = "csv";
  std::string out = "-";
};

TailEstimate tail_estimate_from_json_doc(const nlohmann::json& j) {
  TailEstimate est;
  est.quantity = tail_quantity_from_string(j.at("quantity").get<std::string>());
  est.n = j.at("n").get<int>();
  est.d = j.at("d").get<int>();
  est.sigma = j.at("sigma").get<double>();
  est.reference_exponent = j.at("reference_exponent").get<double>();
  if (!j.at("alpha_hat").is_null()) est.alpha_hat = j["alpha_hat"].get<double>();
  if (!j.at("c_hat").is_null()) est.c_hat = j["c_hat"].get<double>();
  for (const nlohmann::json& c : j.at("cells")) {
    TailCell cell;
    cell.eps = c.at("eps").get<double>();
    cell.hits = c.at("hits").get<std::uint64_t>();
    cell.trials = c.at("trials").get<std::uint64_t>();
    cell.p = c.at("p").get<double>();
    cell.ci_lo = c.at("ci_lo").get<double>();
    cell.ci_hi = c.at("ci_hi").get<double>();
    est.cells.push_back(cell);
  }
  return est;
}

McAngleReport mc_report_from_json_doc(const nlohmann::json& j) {
  McAngleReport rep;
  rep.d = j.at("d").get<int>();
  rep.s = j.at("s").get<double>();
  rep.sigma = j.at("sigma").get<double>();
  rep.r = j.at("r").get<double>();
  rep.window = j.at("window").get<double>();
  rep.trials = j.at("trials").get<std::uint64_t>();
  rep.seed = j.at("seed").get<std::uint64_t>();
  rep.accepted = j.at("accepted").get<std::uint64_t>();
  rep.ess = j.at("ess").get<double>();
  rep.bin_width = j.at("bin_width").get<double>();
  rep.empirical_sup = j.at("empirical_sup").get<double>();
  rep.empirical_argmax = j.at("empirical_argmax").get<double>();
  rep.mode_window_density = j.at("mode_window_density").get<double>();
  rep.exact_sup = j.at("exact_sup").get<double>();
  rep.exact_argmax = j.at("exact_argmax").get<double>();
  rep.bound = j.at("bound").get<double>();
  rep.tolerance = j.at("tolerance").get<double>();
  rep.pass_empirical_vs_exact = j.at("pass_empirical_vs_exact").get<bool>();
  rep.pass_exact_vs_bound = j.at("pass_exact_vs_bound").get<bool>();
  return rep;
}

int cmd_export(const ExportArgs& a) {
  echo_config({{"subcommand", "export"},
               {"in", a.in},
               {"format", a.format},
               {"out", a.out}});
  const std::string text = read_text_file(a.in);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("export: ") + e.what());
  }
  const bool csv = a.format == "csv";

  if (j.is_object() && j.contains("records")) {
    std::vector<IterationRecord> records = iteration_records_from_json(text);
    if (csv) {
      emit(a.out, iteration_records_csv(records));
    } else {
      ExperimentConfig cfg =
          experiment_config_from_json(j.at("config").dump());
      emit(a.out, iteration_records_json(cfg, records) + "\n");
    }
    return 0;
  }
  const std::string kind = j.is_object() ? j.value("kind", "") : "";
  if (kind == "tail_estimate") {
    TailEstimate est = tail_estimate_from_json_doc(j);
    emit(a.out, csv ? tail_estimate_csv(est) : tail_estimate_json(est) + "\n");
    return 0;
  }
  if (kind == "mc_angle_verify") {
    McAngleReport rep = mc_report_from_json_doc(j);
    emit(a.out, csv ? mc_report_csv_header() + "\n" + mc_report_csv_row(rep) +
                          "\n"
                    : mc_report_json(rep) + "\n");
    return 0;
  }
  if (kind == "scaling_fit") {
    if (csv) {
      std::string row = "model,exponent,std_error,ci_lo,ci_hi,points,reference\n";
      row += j.at("model").get<std::string>() + "," +
             fmt(j.at("exponent").get<double>()) + "," +
             fmt(j.at("std_error").get<double>()) + "," +
             fmt(j.at("ci_lo").get<double>()) + "," +
             fmt(j.at("ci_hi").get<double>()) + "," +
             std::to_string(j.at("points").get<int>()) + "," +
             fmt(j.at("reference").get<double>()) + "\n";
      emit(a.out, row);
    } else {
      emit(a.out, j.dump(2) + "\n");
    }
    return 0;
  }
  throw ParseError("export: unrecognized document; expected an iteration "
                   "record envelope, tail_estimate, mc_angle_verify or "
                   "scaling_fit");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Smoothed-analysis laboratory for 2-opt on Euclidean TSP"};
  app.require_subcommand(1);

  const std::vector<std::string> layout_names = {"uniform", "grid", "clustered"};
  const std::vector<std::string> pivot_names = {"first", "best", "random"};
  const std::vector<std::string> start_names = {"identity", "random", "greedy"};
  const std::vector<std::string> format_names = {"csv", "json"};

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate an instance file");
  gen_cmd->add_option("--kind", gen.kind, "Adversarial layout kind")
      ->check(CLI::IsMember(layout_names));
  gen_cmd->add_option("--n", gen.n, "Point count (>= 4)");
  gen_cmd->add_option("--d", gen.d, "Dimension (>= 2)");
  gen_cmd->add_option("--sigma", gen.sigma,
                      "Gaussian noise scale in (0, 1]; 0 keeps the bare layout");
  gen_cmd->add_option("--seed", gen.seed, "Layout seed; noise derives from it")
      ->envname("SMOOTHED2OPT_SEED");
  gen_cmd->add_option("--out", gen.out, "Output path");
  gen_cmd->add_option("--format", gen.format, "Instance file format")
      ->check(CLI::IsMember({"json", "tsplib"}));

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Run 2-opt on an instance");
  solve_cmd->add_option("--in", solve.in, "Instance file")->required();
  solve_cmd->add_option("--format", solve.format, "Instance file format")
      ->check(CLI::IsMember({"json", "tsplib"}));
  solve_cmd->add_option("--pivot", solve.pivot, "Pivot rule")
      ->check(CLI::IsMember(pivot_names));
  solve_cmd->add_option("--start", solve.start, "Initial tour")
      ->check(CLI::IsMember(start_names));
  solve_cmd->add_option("--step-limit", solve.step_limit, "Move cap");
  solve_cmd->add_option("--seed", solve.seed, "Seed for random start/pivot")
      ->envname("SMOOTHED2OPT_SEED");
  solve_cmd->add_option("--trace", solve.trace, "Write the full trace as JSON");

  PairsArgs pairs;
  CLI::App* pairs_cmd =
      app.add_subcommand("pairs", "Census of linked 2-change pairs");
  pairs_cmd->add_option("--in", pairs.in,
                        "Instance file; omit to generate one instead");
  pairs_cmd->add_option("--kind", pairs.kind, "Layout kind when generating")
      ->check(CLI::IsMember(layout_names));
  pairs_cmd->add_option("--n", pairs.n, "Point count when generating");
  pairs_cmd->add_option("--d", pairs.d, "Dimension when generating");
  pairs_cmd->add_option("--sigma", pairs.sigma, "Noise scale when generating");
  pairs_cmd->add_option("--seed", pairs.seed, "Seed when generating")
      ->envname("SMOOTHED2OPT_SEED");
  pairs_cmd->add_option("--out", pairs.out, "Output path or - for stdout");

  VerifyMathArgs vm;
  CLI::App* vm_cmd = app.add_subcommand(
      "verify-math", "Check the bound inequalities on evaluation grids");
  vm_cmd->add_option("--grid", vm.grid, "Grid size")
      ->check(CLI::IsMember({"default", "fast"}));
  vm_cmd->add_option("--out", vm.out, "Report path or - for stdout");

  AngleMcArgs mc;
  CLI::App* mc_cmd = app.add_subcommand(
      "angle-mc", "Monte Carlo check of the conditional angle density");
  mc_cmd->add_option("--d", mc.d, "Dimension (>= 2)");
  mc_cmd->add_option("--s", mc.s, "Distance from the conditioning point to the mean");
  mc_cmd->add_option("--sigma", mc.sigma, "Gaussian scale");
  mc_cmd->add_option("--r", mc.r, "Conditioned radius");
  mc_cmd->add_option("--window", mc.window, "Relative radius window");
  mc_cmd->add_option("--trials", mc.trials, "Proposal draws");
  mc_cmd->add_option("--seed", mc.seed, "Stream seed")
      ->envname("SMOOTHED2OPT_SEED");
  mc_cmd->add_option("--jobs", mc.jobs, "Deterministic substream count");
  mc_cmd->add_option("--format", mc.format, "Output format")
      ->check(CLI::IsMember(format_names));
  mc_cmd->add_option("--out", mc.out, "Output path or - for stdout");

  TailArgs tail;
  CLI::App* tail_cmd = app.add_subcommand(
      "tail", "Estimate the small-improvement tail of a gap quantity");
  tail_cmd
      ->add_option("--quantity", tail.quantity,
                   "delta_min | linked_min_type0 | linked_min_type1 | "
                   "conditioned_single")
      ->required()
      ->check(CLI::IsMember({"delta_min", "linked_min_type0",
                             "linked_min_type1", "conditioned_single"}));
  tail_cmd->add_option("--n", tail.n, "Point count");
  tail_cmd->add_option("--d", tail.d, "Dimension");
  tail_cmd->add_option("--sigma", tail.sigma, "Noise scale");
  tail_cmd->add_option("--kind", tail.kind, "Adversarial layout kind")
      ->check(CLI::IsMember(layout_names));
  tail_cmd->add_option("--eps", tail.eps,
                       "Comma-separated strictly decreasing window widths")
      ->delimiter(',');
  tail_cmd->add_option("--trials", tail.trials, "Trials (>= 100)");
  tail_cmd->add_option("--seed", tail.seed, "Noise stream seed")
      ->envname("SMOOTHED2OPT_SEED");
  CLI::Option* ls_opt = tail_cmd->add_option("--layout-seed", tail.layout_seed,
                                             "Layout seed; defaults to --seed");
  tail_cmd->add_option("--jobs", tail.jobs, "Worker count");
  tail_cmd->add_option("--format", tail.format, "Output format")
      ->check(CLI::IsMember(format_names));
  tail_cmd->add_option("--out", tail.out, "Output path or - for stdout");

  ExperimentArgs exp;
  CLI::App* exp_cmd = app.add_subcommand(
      "experiment", "Iteration-count experiment over an (n, d, sigma) grid");
  exp_cmd->add_option("--config", exp.config, "Experiment config JSON file");
  exp_cmd->add_option("--n", exp.n, "n grid (comma separated)")->delimiter(',');
  exp_cmd->add_option("--d", exp.d, "d grid (comma separated)")->delimiter(',');
  exp_cmd->add_option("--sigma", exp.sigma, "sigma grid (comma separated)")
      ->delimiter(',');
  exp_cmd->add_option("--kind", exp.kind, "Adversarial layout kind")
      ->check(CLI::IsMember(layout_names));
  exp_cmd->add_option("--trials", exp.trials, "Trials per cell");
  exp_cmd->add_option("--pivot", exp.pivot, "Pivot rule")
      ->check(CLI::IsMember(pivot_names));
  exp_cmd->add_option("--start", exp.start, "Initial tour")
      ->check(CLI::IsMember(start_names));
  CLI::Option* sl_opt =
      exp_cmd->add_option("--step-limit", exp.step_limit, "Move cap per run");
  CLI::Option* seed_opt = exp_cmd->add_option("--seed", exp.seed, "Master seed")
                              ->envname("SMOOTHED2OPT_SEED");
  exp_cmd->add_option("--box-c", exp.box_c, "Bounding box constant (>= 2)");
  exp_cmd->add_flag("--timing", exp.timing,
                    "Record wall clock (breaks bit-reproducibility)");
  exp_cmd->add_option("--jobs", exp.jobs, "Worker count");
  exp_cmd->add_option("--out", exp.out, "Output path prefix");

  ExportArgs ex;
  CLI::App* ex_cmd = app.add_subcommand(
      "export", "Convert a result JSON document to CSV or normalized JSON");
  ex_cmd->add_option("--in", ex.in, "Input JSON document")->required();
  ex_cmd->add_option("--format", ex.format, "Output format")
      ->check(CLI::IsMember(format_names));
  ex_cmd->add_option("--out", ex.out, "Output path or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;  // usage errors are exit 1 regardless of CLI11's own codes
  }

  tail.layout_seed_set = ls_opt->count() > 0;
  exp.step_limit_set = sl_opt->count() > 0;
  exp.seed_set = seed_opt->count() > 0;

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen);
    if (solve_cmd->parsed()) return cmd_solve(solve);
    if (pairs_cmd->parsed()) return cmd_pairs(pairs);
    if (vm_cmd->parsed()) return cmd_verify_math(vm);
    if (mc_cmd->parsed()) return cmd_angle_mc(mc);
    if (tail_cmd->parsed()) return cmd_tail(tail);
    if (exp_cmd->parsed()) return cmd_experiment(exp);
    if (ex_cmd->parsed()) return cmd_export(ex);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
