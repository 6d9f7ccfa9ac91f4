#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smoothed2opt/angle_lab.hpp"
#include "smoothed2opt/harness.hpp"
#include "smoothed2opt/instances.hpp"
#include "smoothed2opt/linked_pairs.hpp"
#include "smoothed2opt/random.hpp"
#include "smoothed2opt/special_math.hpp"
#include "smoothed2opt/tour_engine.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace smoothed2opt;

namespace {

// Enums cross the boundary as the same strings the CSV/JSON layer uses.
SupBoundForm sup_form(const std::string& name) {
  if (name == "plain") return SupBoundForm::plain;
  if (name == "over_sine") return SupBoundForm::over_sine;
  throw std::invalid_argument("unknown sup bound form: " + name);
}

BesselBound bessel_form(const std::string& name) {
  if (name == "k0") return BesselBound::k0;
  if (name == "largex") return BesselBound::largex;
  if (name == "generic") return BesselBound::generic;
  if (name == "ratio") return BesselBound::ratio;
  throw std::invalid_argument("unknown bessel bound form: " + name);
}

FileFormat file_format(const std::string& name) {
  if (name == "json") return FileFormat::native_json;
  if (name == "tsplib") return FileFormat::tsplib_euc2d;
  throw std::invalid_argument("unknown instance file format: " + name);
}

ScalingModel scaling_model(const std::string& name) {
  if (name == "iterations_vs_n") return ScalingModel::iterations_vs_n;
  if (name == "iterations_vs_inv_sigma")
    return ScalingModel::iterations_vs_inv_sigma;
  throw std::invalid_argument("unknown scaling model: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Smoothed-analysis laboratory for the 2-opt heuristic on Euclidean "
      "TSP under Gaussian perturbations";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<UnsupportedFormatError>(m, "UnsupportedFormatError",
                                                 PyExc_ValueError);
  py::register_exception<InsufficientDataError>(m, "InsufficientDataError",
                                                PyExc_RuntimeError);

  // ----------------------------------------------------------- instances

  py::class_<AdversarialLayout>(m, "AdversarialLayout",
                                "Unperturbed point layout in [-1, 1]^d")
      .def_readonly("n", &AdversarialLayout::n)
      .def_readonly("d", &AdversarialLayout::d)
      .def_readonly("coords", &AdversarialLayout::coords,
                    "Row-major, n*d entries")
      .def_property_readonly(
          "kind", [](const AdversarialLayout& l) { return to_string(l.kind); })
      .def("__repr__", [](const AdversarialLayout& l) {
        return "AdversarialLayout(kind=" + to_string(l.kind) +
               ", n=" + std::to_string(l.n) + ", d=" + std::to_string(l.d) +
               ")";
      });

  py::class_<Provenance>(m, "Provenance",
                         "Layout and noise spec an instance was drawn from")
      .def_readonly("layout", &Provenance::layout)
      .def_property_readonly(
          "sigma", [](const Provenance& p) { return p.spec.sigma; })
      .def_property_readonly(
          "seed", [](const Provenance& p) { return p.spec.seed; });

  py::class_<PointSet>(m, "PointSet", "Perturbed instance, n >= 4 points")
      .def_readonly("n", &PointSet::n)
      .def_readonly("d", &PointSet::d)
      .def_readonly("coords", &PointSet::coords, "Row-major, n*d entries")
      .def_readonly("provenance", &PointSet::provenance)
      .def("__repr__", [](const PointSet& ps) {
        return "PointSet(n=" + std::to_string(ps.n) +
               ", d=" + std::to_string(ps.d) + ")";
      });

  py::class_<BoxCheck>(m, "BoxCheck")
      .def_readonly("D", &BoxCheck::D)
      .def_readonly("inside", &BoxCheck::inside);

  m.def(
      "generate_adversarial",
      [](const std::string& kind, int n, int d, std::uint64_t seed) {
        return generate_adversarial(layout_kind_from_string(kind), n, d, seed);
      },
      py::arg("kind"), py::arg("n"), py::arg("d"), py::arg("seed") = 0,
      "Deterministic layout: uniform, grid (seed ignored) or clustered");
  m.def("validate_layout", &validate_layout, py::arg("layout"));
  m.def(
      "perturb",
      [](const AdversarialLayout& layout, double sigma, std::uint64_t seed) {
        return perturb(layout, PerturbationSpec{sigma, seed});
      },
      py::arg("layout"), py::arg("sigma"), py::arg("seed") = 0,
      "Adds an independent N(0, sigma^2 I_d) draw to each point");
  m.def("box_radius", &box_radius, py::arg("c"), py::arg("sigma"),
        py::arg("n"), "Box half-width c * (1 + sigma * sqrt(n ln n))");
  m.def("bounding_box_check", &bounding_box_check, py::arg("points"),
        py::arg("c"), "Checks every coordinate lies in [-D, D]");
  m.def(
      "save_instance",
      [](const PointSet& ps, const std::string& path,
         const std::string& format) {
        save_instance(ps, path, file_format(format));
      },
      py::arg("points"), py::arg("path"), py::arg("format") = "json");
  m.def(
      "load_instance",
      [](const std::string& path, const std::string& format) {
        return load_instance(path, file_format(format));
      },
      py::arg("path"), py::arg("format") = "json");

  // --------------------------------------------------------- tour engine

  py::class_<Tour>(m, "Tour",
                   "Canonical cyclic tour: order[0] = 0, order[1] < order[-1]")
      .def_readonly("order", &Tour::order)
      .def_property_readonly("n", &Tour::n)
      .def("__repr__", [](const Tour& t) {
        return "Tour(n=" + std::to_string(t.n()) + ")";
      });

  py::class_<TwoChange>(m, "TwoChange",
                        "Exchange of edges {a,z1},{b,z2} for {a,z2},{b,z1}; "
                        "delta > 0 shortens the tour by delta")
      .def_readonly("a", &TwoChange::a)
      .def_readonly("z1", &TwoChange::z1)
      .def_readonly("b", &TwoChange::b)
      .def_readonly("z2", &TwoChange::z2)
      .def_readonly("delta", &TwoChange::delta)
      .def("__repr__", [](const TwoChange& mv) {
        return "TwoChange(a=" + std::to_string(mv.a) +
               ", z1=" + std::to_string(mv.z1) + ", b=" + std::to_string(mv.b) +
               ", z2=" + std::to_string(mv.z2) +
               ", delta=" + std::to_string(mv.delta) + ")";
      });

  py::class_<RunTrace>(m, "RunTrace", "Full 2-opt run record")
      .def_readonly("initial_tour", &RunTrace::initial_tour)
      .def_readonly("final_tour", &RunTrace::final_tour)
      .def_readonly("moves", &RunTrace::moves)
      .def_readonly("lengths", &RunTrace::lengths,
                    "lengths[k+1] = lengths[k] - moves[k].delta")
      .def_readonly("seed", &RunTrace::seed)
      .def_property_readonly(
          "pivot", [](const RunTrace& t) { return to_string(t.pivot); })
      .def_property_readonly("termination", [](const RunTrace& t) {
        return to_string(t.termination);
      });

  py::class_<MinImprovement>(m, "MinImprovement")
      .def_readonly("delta_min", &MinImprovement::delta_min)
      .def_readonly("move", &MinImprovement::move);

  m.def(
      "make_canonical",
      [](std::vector<int> order) { return make_canonical(std::move(order)); },
      py::arg("order"));
  m.def("validate_tour", &validate_tour, py::arg("tour"), py::arg("points"));
  m.def("point_distance", &point_distance, py::arg("points"), py::arg("i"),
        py::arg("j"));
  m.def("make_two_change", &make_two_change, py::arg("points"), py::arg("a"),
        py::arg("z1"), py::arg("b"), py::arg("z2"));
  m.def("delta", &delta, py::arg("points"), py::arg("a"), py::arg("z1"),
        py::arg("b"), py::arg("z2"),
        "|a-z1| + |b-z2| - |a-z2| - |b-z1|");
  m.def("law_of_cosines_eta", &law_of_cosines_eta, py::arg("A"), py::arg("R"),
        py::arg("phi"),
        "A - sqrt(A^2 + R^2 - 2 A R cos(phi)), the one-edge length change");
  m.def("apply_two_change", &apply_two_change, py::arg("tour"),
        py::arg("move"));
  m.def("tour_length", &tour_length, py::arg("tour"), py::arg("points"));
  m.def(
      "find_improving",
      [](const Tour& tour, const PointSet& ps, const std::string& pivot,
         double threshold, std::uint64_t seed) {
        const PivotRule rule = pivot_rule_from_string(pivot);
        if (rule == PivotRule::random) {
          Rng rng(seed);
          return find_improving(tour, ps, rule, threshold, &rng);
        }
        return find_improving(tour, ps, rule, threshold);
      },
      py::arg("tour"), py::arg("points"), py::arg("pivot") = "first",
      py::arg("threshold") = 0.0, py::arg("seed") = 0,
      "First/best/random improving move with delta > threshold, or None");
  m.def(
      "run_two_opt",
      [](const Tour& start, const PointSet& ps, const std::string& pivot,
         std::uint64_t step_limit, double threshold, std::uint64_t seed) {
        return run_two_opt(start, ps, pivot_rule_from_string(pivot),
                           step_limit, threshold, seed);
      },
      py::arg("start"), py::arg("points"), py::arg("pivot") = "first",
      py::arg("step_limit") = UINT64_MAX, py::arg("threshold") = -1.0,
      py::arg("seed") = 0, py::call_guard<py::gil_scoped_release>(),
      "Runs 2-opt to a local optimum or the step limit; threshold < 0 "
      "selects the adaptive default 1e-12 * current length");
  m.def("run_trace_json", &run_trace_json, py::arg("trace"));
  m.def(
      "initial_tour",
      [](const std::string& kind, const PointSet& ps, std::uint64_t seed) {
        return initial_tour(initial_tour_kind_from_string(kind), ps, seed);
      },
      py::arg("kind"), py::arg("points"), py::arg("seed") = 0,
      "identity, random (seeded shuffle) or greedy nearest-neighbor");
  m.def("min_improvement", &min_improvement, py::arg("points"),
        py::call_guard<py::gil_scoped_release>(),
        "Smallest strictly positive gain over every 2-change, or None");

  // -------------------------------------------------------- linked pairs

  py::class_<LinkedPair>(m, "LinkedPair")
      .def_readonly("first", &LinkedPair::first)
      .def_readonly("second", &LinkedPair::second)
      .def_readonly("shared_edges", &LinkedPair::shared_edges)
      .def_property_readonly(
          "kind", [](const LinkedPair& p) { return to_string(p.kind); });

  py::class_<MinLinkedImprovement>(m, "MinLinkedImprovement")
      .def_readonly("delta_sum", &MinLinkedImprovement::delta_sum)
      .def_readonly("pair", &MinLinkedImprovement::pair);

  m.def("classify_pair", &classify_pair, py::arg("m1"), py::arg("m2"),
        "Linked-pair kind of two exchanges, or None when unlinked or "
        "outside the taxonomy");
  m.def(
      "count_linked_pairs",
      [](const PointSet& ps, const std::string& kind) {
        return count_linked_pairs(ps, linked_kind_from_string(kind));
      },
      py::arg("points"), py::arg("kind"),
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "min_linked_improvement",
      [](const PointSet& ps, const std::string& kind) {
        return min_linked_improvement(ps, linked_kind_from_string(kind));
      },
      py::arg("points"), py::arg("kind"),
      py::call_guard<py::gil_scoped_release>(),
      "Smallest delta sum over linked pairs with both deltas positive");
  m.def("extract_disjoint_pairs", &extract_disjoint_pairs, py::arg("trace"),
        "Greedy matching of executed moves into vertex-disjoint pairs");
  m.def("pair_census_json", &pair_census_json, py::arg("points"),
        py::call_guard<py::gil_scoped_release>());

  // -------------------------------------------------------- special math

  py::class_<InverseMomentResult>(m, "InverseMomentResult")
      .def_readonly("value", &InverseMomentResult::value)
      .def_readonly("ratio", &InverseMomentResult::ratio,
                    "value * d^{c/2} * sigma^c, the dimensionless form");

  py::class_<ChiDistribution>(m, "ChiDistribution",
                              "Distance of a Gaussian point from a fixed "
                              "point at distance s from its mean")
      .def(py::init([](int d, double s, double sigma) {
             return ChiDistribution(ChiParams{d, s, sigma});
           }),
           py::arg("d"), py::arg("s") = 0.0, py::arg("sigma") = 1.0)
      .def_property_readonly(
          "d", [](const ChiDistribution& c) { return c.params().d; })
      .def_property_readonly(
          "s", [](const ChiDistribution& c) { return c.params().s; })
      .def_property_readonly(
          "sigma", [](const ChiDistribution& c) { return c.params().sigma; })
      .def("density", &ChiDistribution::density, py::arg("r"))
      .def("density_mixture", &ChiDistribution::density_mixture, py::arg("r"),
           "Same density through the noncentral chi-squared mixture series")
      .def("cdf", &ChiDistribution::cdf, py::arg("r"))
      .def(
          "sample",
          [](const ChiDistribution& chi, std::size_t count,
             std::uint64_t seed) {
            Rng rng(seed);
            std::vector<double> out(count);
            for (double& x : out) x = chi.sample(rng);
            return out;
          },
          py::arg("count"), py::arg("seed") = 0);

  m.def("bessel_i", &bessel_i, py::arg("nu"), py::arg("x"),
        py::arg("scaled") = false,
        "Modified Bessel function of the first kind; scaled multiplies by "
        "exp(-x)");
  m.def(
      "bessel_lower_bound",
      [](const std::string& form, double nu, double x) {
        return bessel_lower_bound(bessel_form(form), nu, x);
      },
      py::arg("form"), py::arg("nu"), py::arg("x"),
      "Lower bound forms k0, largex, generic, ratio");
  m.def("simple_inequality_lhs", &simple_inequality_lhs, py::arg("x"),
        py::arg("y"), "((x + y) / (x + y - 1/2))^y, bounded by e");
  m.def("chi_inverse_moment", &chi_inverse_moment, py::arg("d"),
        py::arg("sigma"), py::arg("c"),
        "E[r^-c] for the central chi distance, 0 <= c < d");

  // ----------------------------------------------------------- angle lab

  py::class_<AngleContext>(m, "AngleContext",
                           "Conditional angle model: dimension d, radius r, "
                           "drift s, noise sigma")
      .def(py::init([](int d, double r, double s, double sigma) {
             AngleContext ctx;
             ctx.d = d;
             ctx.r = r;
             ctx.s = s;
             ctx.sigma = sigma;
             return ctx;
           }),
           py::arg("d"), py::arg("r") = 1.0, py::arg("s") = 0.0,
           py::arg("sigma") = 1.0)
      .def_readwrite("d", &AngleContext::d)
      .def_readwrite("r", &AngleContext::r)
      .def_readwrite("s", &AngleContext::s)
      .def_readwrite("sigma", &AngleContext::sigma)
      .def_property_readonly("kappa", &AngleContext::kappa,
                             "r * s / sigma^2, the concentration")
      .def_property_readonly("nu", &AngleContext::nu, "d/2 - 1");

  py::class_<OptimalAngle>(m, "OptimalAngle")
      .def_readonly("phi_star", &OptimalAngle::phi_star)
      .def_readonly("cos_phi_star", &OptimalAngle::cos_phi_star);

  py::class_<RandomExptOutcome>(m, "RandomExptOutcome")
      .def_readonly("branch", &RandomExptOutcome::branch)
      .def_readonly("good_angle", &RandomExptOutcome::good_angle);

  py::class_<EtaDensityBound>(m, "EtaDensityBound")
      .def_readonly("value", &EtaDensityBound::value)
      .def_readonly("phi", &EtaDensityBound::phi);

  py::class_<McAngleReport>(m, "McAngleReport",
                            "Monte Carlo check of the angle-density chain "
                            "empirical <= exact <= bound")
      .def_readonly("d", &McAngleReport::d)
      .def_readonly("s", &McAngleReport::s)
      .def_readonly("sigma", &McAngleReport::sigma)
      .def_readonly("r", &McAngleReport::r)
      .def_readonly("window", &McAngleReport::window)
      .def_readonly("trials", &McAngleReport::trials)
      .def_readonly("seed", &McAngleReport::seed)
      .def_readonly("accepted", &McAngleReport::accepted)
      .def_readonly("ess", &McAngleReport::ess)
      .def_readonly("bin_width", &McAngleReport::bin_width)
      .def_readonly("empirical_sup", &McAngleReport::empirical_sup)
      .def_readonly("empirical_argmax", &McAngleReport::empirical_argmax)
      .def_readonly("mode_window_density", &McAngleReport::mode_window_density)
      .def_readonly("exact_sup", &McAngleReport::exact_sup)
      .def_readonly("exact_argmax", &McAngleReport::exact_argmax)
      .def_readonly("bound", &McAngleReport::bound)
      .def_readonly("tolerance", &McAngleReport::tolerance)
      .def_readonly("pass_empirical_vs_exact",
                    &McAngleReport::pass_empirical_vs_exact)
      .def_readonly("pass_exact_vs_bound", &McAngleReport::pass_exact_vs_bound);

  m.def("validate_angle_context", &validate_angle_context, py::arg("ctx"));
  m.def("angle_density", &angle_density, py::arg("ctx"), py::arg("phi"),
        "Exact conditional density of the angle on [0, pi]");
  m.def("angle_density_sup", &angle_density_sup, py::arg("ctx"));
  m.def("angle_density_over_sine_sup", &angle_density_over_sine_sup,
        py::arg("ctx"), "Requires d >= 3");
  m.def("optimal_angle", &optimal_angle, py::arg("nu"), py::arg("kappa"));
  m.def(
      "angle_sup_bound",
      [](const AngleContext& ctx, const std::string& form) {
        return angle_sup_bound(ctx, sup_form(form));
      },
      py::arg("ctx"), py::arg("form") = "plain",
      "Fitted upper bound; forms plain (d >= 2) and over_sine (d >= 3)");
  m.def(
      "pair_angle_sup_bound",
      [](int d, double r, double r_bar, double s, double s_bar, double sigma,
         const std::string& form) {
        return pair_angle_sup_bound(d, r, r_bar, s, s_bar, sigma,
                                    sup_form(form));
      },
      py::arg("d"), py::arg("r"), py::arg("r_bar"), py::arg("s"),
      py::arg("s_bar"), py::arg("sigma"), py::arg("form") = "plain");
  m.def(
      "sample_angle",
      [](const AngleContext& ctx, std::uint64_t seed) {
        return sample_angle(ctx, seed);
      },
      py::arg("ctx"), py::arg("seed") = 0);
  m.def(
      "sample_angles",
      [](const AngleContext& ctx, std::size_t count, std::uint64_t seed) {
        AngleSampler sampler(ctx);
        Rng rng(seed);
        std::vector<double> out(count);
        for (double& x : out) x = sampler.sample(rng);
        return out;
      },
      py::arg("ctx"), py::arg("count"), py::arg("seed") = 0,
      py::call_guard<py::gil_scoped_release>(),
      "Bulk draws reusing one sampler");
  m.def("good_eta_branch_params", &good_eta_branch_params, py::arg("a1"),
        py::arg("a2"), py::arg("r"), "Branch weights (min(a1,r), min(a2,r))");
  m.def("random_expt_branch", &random_expt_branch, py::arg("b1"),
        py::arg("b2"), py::arg("phi1"), py::arg("phi2"),
        "Branch 1 iff sqrt(b1) sin(phi1) > sqrt(b2) sin(phi2)");
  m.def(
      "random_expt",
      [](double b1, double b2, const AngleContext& ctx1,
         const AngleContext& ctx2, std::uint64_t seed) {
        return random_expt(b1, b2, ctx1, ctx2, seed);
      },
      py::arg("b1"), py::arg("b2"), py::arg("ctx1"), py::arg("ctx2"),
      py::arg("seed") = 0);
  m.def("eta_density_bound", &eta_density_bound, py::arg("a_i"), py::arg("r"),
        py::arg("eta"), py::arg("m_phi"),
        "One-edge length-change density bound; +inf at the degenerate "
        "endpoints");
  m.def("eta_density_bound_d3", &eta_density_bound_d3, py::arg("d"),
        py::arg("a_i"), py::arg("r"), py::arg("sigma"), py::arg("big_d"),
        "Divergence-free form, d >= 3");
  m.def("paper_bound", &paper_bound, py::arg("id"), py::arg("params"),
        "Registry formula times its fitted leading constant");
  m.def("paper_bound_expression", &paper_bound_expression, py::arg("id"),
        py::arg("params"), "Registry formula without the constant");
  m.def("paper_bound_constant", &paper_bound_constant, py::arg("id"));
  m.def("paper_bound_ids", &paper_bound_ids);
  m.def("mc_angle_verify", &mc_angle_verify, py::arg("d"), py::arg("s"),
        py::arg("sigma"), py::arg("r"), py::arg("window") = 0.05,
        py::arg("trials") = 200000, py::arg("seed") = 0, py::arg("jobs") = 8,
        py::call_guard<py::gil_scoped_release>(),
        "Importance-sampled check of empirical <= exact <= bound; the "
        "result depends on jobs, not on the thread count");
  m.def("mc_report_csv_header", &mc_report_csv_header);
  m.def("mc_report_csv_row", &mc_report_csv_row, py::arg("report"));
  m.def("mc_report_json", &mc_report_json, py::arg("report"));

  // ------------------------------------------------------------- harness

  py::class_<ExperimentConfig>(m, "ExperimentConfig",
                               "Grid of (n, d, sigma) cells, `trials` runs "
                               "each, deterministic per seed")
      .def(py::init<>())
      .def_readwrite("n_grid", &ExperimentConfig::n_grid)
      .def_readwrite("d_grid", &ExperimentConfig::d_grid)
      .def_readwrite("sigma_grid", &ExperimentConfig::sigma_grid)
      .def_property(
          "layout",
          [](const ExperimentConfig& c) { return to_string(c.layout); },
          [](ExperimentConfig& c, const std::string& v) {
            c.layout = layout_kind_from_string(v);
          })
      .def_readwrite("trials", &ExperimentConfig::trials)
      .def_property(
          "pivot",
          [](const ExperimentConfig& c) { return to_string(c.pivot); },
          [](ExperimentConfig& c, const std::string& v) {
            c.pivot = pivot_rule_from_string(v);
          })
      .def_property(
          "start",
          [](const ExperimentConfig& c) { return to_string(c.start); },
          [](ExperimentConfig& c, const std::string& v) {
            c.start = initial_tour_kind_from_string(v);
          })
      .def_readwrite("step_limit", &ExperimentConfig::step_limit)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("box_c", &ExperimentConfig::box_c)
      .def_readwrite("record_timing", &ExperimentConfig::record_timing);

  py::class_<IterationRecord>(m, "IterationRecord")
      .def_readonly("n", &IterationRecord::n)
      .def_readonly("d", &IterationRecord::d)
      .def_readonly("sigma", &IterationRecord::sigma)
      .def_property_readonly(
          "kind", [](const IterationRecord& r) { return to_string(r.kind); })
      .def_readonly("trial", &IterationRecord::trial)
      .def_readonly("seed", &IterationRecord::seed)
      .def_readonly("iterations", &IterationRecord::iterations)
      .def_readonly("len_init", &IterationRecord::len_init)
      .def_readonly("len_final", &IterationRecord::len_final)
      .def_readonly("box_d", &IterationRecord::box_d)
      .def_readonly("in_box", &IterationRecord::in_box)
      .def_property_readonly(
          "pivot", [](const IterationRecord& r) { return to_string(r.pivot); })
      .def_readonly("ms", &IterationRecord::ms);

  py::class_<PotentialCheck>(m, "PotentialCheck")
      .def_readonly("bound", &PotentialCheck::bound)
      .def_readonly("actual", &PotentialCheck::actual)
      .def_readonly("pass_", &PotentialCheck::pass)
      .def("__bool__", [](const PotentialCheck& c) { return c.pass; });

  py::class_<TailCell>(m, "TailCell")
      .def_readonly("eps", &TailCell::eps)
      .def_readonly("hits", &TailCell::hits)
      .def_readonly("trials", &TailCell::trials)
      .def_readonly("p", &TailCell::p)
      .def_readonly("ci_lo", &TailCell::ci_lo)
      .def_readonly("ci_hi", &TailCell::ci_hi);

  py::class_<TailEstimate>(m, "TailEstimate")
      .def_property_readonly(
          "quantity",
          [](const TailEstimate& t) { return to_string(t.quantity); })
      .def_readonly("n", &TailEstimate::n)
      .def_readonly("d", &TailEstimate::d)
      .def_readonly("sigma", &TailEstimate::sigma)
      .def_readonly("cells", &TailEstimate::cells)
      .def_readonly("alpha_hat", &TailEstimate::alpha_hat,
                    "Fitted tail exponent; None when too few cells qualify")
      .def_readonly("c_hat", &TailEstimate::c_hat)
      .def_readonly("reference_exponent", &TailEstimate::reference_exponent);

  py::class_<ScalingFit>(m, "ScalingFit")
      .def_property_readonly(
          "model", [](const ScalingFit& f) { return to_string(f.model); })
      .def_readonly("exponent", &ScalingFit::exponent)
      .def_readonly("std_error", &ScalingFit::std_error)
      .def_readonly("ci_lo", &ScalingFit::ci_lo)
      .def_readonly("ci_hi", &ScalingFit::ci_hi)
      .def_readonly("points", &ScalingFit::points)
      .def_readonly("reference", &ScalingFit::reference);

  m.def("validate_experiment_config", &validate_experiment_config,
        py::arg("config"));
  m.def("experiment_config_json", &experiment_config_json, py::arg("config"));
  m.def("experiment_config_from_json", &experiment_config_from_json,
        py::arg("text"));
  m.def("run_iteration_experiment", &run_iteration_experiment,
        py::arg("config"), py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "One 2-opt run per (cell, trial); record order is independent of "
        "jobs");
  m.def("potential_bound_check", &potential_bound_check, py::arg("trace"),
        "Executed moves <= initial length / smallest executed improvement");
  m.def(
      "estimate_tail",
      [](const std::string& quantity, const AdversarialLayout& layout,
         double sigma, const std::vector<double>& eps_grid,
         std::uint64_t trials, std::uint64_t seed, int jobs) {
        return estimate_tail(tail_quantity_from_string(quantity),
                             smoothed_instance_generator(layout, sigma),
                             eps_grid, trials, seed, jobs);
      },
      py::arg("quantity"), py::arg("layout"), py::arg("sigma"),
      py::arg("eps_grid"), py::arg("trials"), py::arg("seed") = 0,
      py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>(),
      "Empirical tail of delta_min, linked_min_type0/1 or "
      "conditioned_single under fresh noise per trial");
  m.def(
      "fit_scaling",
      [](const std::vector<IterationRecord>& records,
         const std::string& model) {
        return fit_scaling(records, scaling_model(model));
      },
      py::arg("records"), py::arg("model") = "iterations_vs_n",
      "Log-log least squares of mean iterations against n or 1/sigma");
  m.def("iteration_csv_header", &iteration_csv_header);
  m.def("iteration_records_csv", &iteration_records_csv, py::arg("records"));
  m.def("iteration_records_json", &iteration_records_json, py::arg("config"),
        py::arg("records"));
  m.def("iteration_records_from_json", &iteration_records_from_json,
        py::arg("text"));
  m.def("tail_csv_header", &tail_csv_header);
  m.def("tail_estimate_csv", &tail_estimate_csv, py::arg("estimate"));
  m.def("tail_estimate_json", &tail_estimate_json, py::arg("estimate"));
  m.def("scaling_fit_json", &scaling_fit_json, py::arg("fit"));
  m.def("hash_combine", &Rng::hash_combine, py::arg("a"), py::arg("b"),
        "Seed derivation used for per-cell and per-trial streams");

#ifdef MODULE_VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(MODULE_VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
