#include <cmath>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "smoothed2opt/harness.hpp"
#include "smoothed2opt/linked_pairs.hpp"

using namespace smoothed2opt;

namespace {

// 2x2 grid layout with the last axis fastest puts the two diagonals into
// the identity tour; exactly one exchange uncrosses it.
ExperimentConfig crossed_square_config() {
  ExperimentConfig cfg;
  cfg.n_grid = {4};
  cfg.d_grid = {2};
  cfg.sigma_grid = {0.01};
  cfg.layout = LayoutKind::grid;
  cfg.trials = 16;
  cfg.pivot = PivotRule::best;
  cfg.start = InitialTourKind::identity;
  cfg.seed = 510;
  return cfg;
}

PointSet unit_square() {
  PointSet ps;
  ps.n = 4;
  ps.d = 2;
  ps.coords = {0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0};
  return ps;
}

bool config_equal(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.n_grid == b.n_grid && a.d_grid == b.d_grid &&
         a.sigma_grid == b.sigma_grid && a.layout == b.layout &&
         a.trials == b.trials && a.pivot == b.pivot && a.start == b.start &&
         a.step_limit == b.step_limit && a.seed == b.seed &&
         a.box_c == b.box_c && a.record_timing == b.record_timing;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config validation rejects each malformed field") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(validate_experiment_config(cfg));

  cfg = ExperimentConfig{};
  cfg.n_grid.clear();
  CHECK_THROWS_WITH_AS(validate_experiment_config(cfg),
                       "experiment config: all grids must be nonempty",
                       std::invalid_argument);

  cfg = ExperimentConfig{};
  cfg.n_grid = {8, 3};
  CHECK_THROWS_WITH_AS(validate_experiment_config(cfg),
                       "experiment config: n must be >= 4",
                       std::invalid_argument);

  cfg = ExperimentConfig{};
  cfg.d_grid = {1};
  CHECK_THROWS_WITH_AS(validate_experiment_config(cfg),
                       "experiment config: d must be >= 2",
                       std::invalid_argument);

  cfg = ExperimentConfig{};
  cfg.sigma_grid = {0.0};
  CHECK_THROWS_WITH_AS(validate_experiment_config(cfg),
                       "experiment config: sigma must lie in (0, 1]",
                       std::invalid_argument);
  cfg.sigma_grid = {1.5};
  CHECK_THROWS_AS(validate_experiment_config(cfg), std::invalid_argument);

  cfg = ExperimentConfig{};
  cfg.trials = 0;
  CHECK_THROWS_WITH_AS(validate_experiment_config(cfg),
                       "experiment config: trials must be >= 1",
                       std::invalid_argument);

  cfg = ExperimentConfig{};
  cfg.layout = LayoutKind::file;
  CHECK_THROWS_WITH_AS(validate_experiment_config(cfg),
                       "experiment config: layouts are generated, not "
                       "loaded; pick uniform, grid or clustered",
                       std::invalid_argument);

  cfg = ExperimentConfig{};
  cfg.box_c = 1.0;
  CHECK_THROWS_WITH_AS(validate_experiment_config(cfg),
                       "experiment config: box constant must be >= 2",
                       std::invalid_argument);
}

TEST_CASE("config json round trip preserves every field") {
  ExperimentConfig cfg;
  cfg.n_grid = {8, 16};
  cfg.d_grid = {2, 3};
  cfg.sigma_grid = {1.0, 0.25};
  cfg.layout = LayoutKind::clustered;
  cfg.trials = 5;
  cfg.pivot = PivotRule::random;
  cfg.start = InitialTourKind::greedy;
  cfg.step_limit = 12345;
  cfg.seed = 99;
  cfg.box_c = 2.5;
  cfg.record_timing = true;

  ExperimentConfig back = experiment_config_from_json(experiment_config_json(cfg));
  CHECK(config_equal(cfg, back));
}

TEST_CASE("empty config object yields the defaults") {
  ExperimentConfig cfg = experiment_config_from_json("{}");
  CHECK(config_equal(cfg, ExperimentConfig{}));
  CHECK(cfg.n_grid == std::vector<int>{32});
  CHECK(cfg.sigma_grid == std::vector<double>{0.5});
  CHECK(cfg.step_limit == UINT64_MAX);
  CHECK(cfg.box_c == 4.0);
  CHECK_FALSE(cfg.record_timing);
}

TEST_CASE("config json rejects malformed input") {
  CHECK_THROWS_AS(experiment_config_from_json("not json"), ParseError);
  CHECK_THROWS_WITH_AS(experiment_config_from_json("[1, 2]"),
                       "experiment config: expected a JSON object", ParseError);
  CHECK_THROWS_WITH_AS(experiment_config_from_json(R"({"foo": 1})"),
                       "experiment config: unknown key 'foo'", ParseError);
  CHECK_THROWS_AS(experiment_config_from_json(R"({"trials": "many"})"),
                  ParseError);
  CHECK_THROWS_AS(experiment_config_from_json(R"({"layout": "moon"})"),
                  ParseError);
  CHECK_THROWS_AS(experiment_config_from_json(R"({"pivot": "worst"})"),
                  ParseError);
  // Well-formed JSON with out-of-range values fails validation instead.
  CHECK_THROWS_AS(experiment_config_from_json(R"({"trials": 0})"),
                  std::invalid_argument);
}

TEST_CASE("crossed square start resolves in one exchange per trial") {
  ExperimentConfig cfg = crossed_square_config();
  std::vector<IterationRecord> recs = run_iteration_experiment(cfg);
  REQUIRE(recs.size() == 16);
  const double crossed = 4.0 + 4.0 * std::sqrt(2.0);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const IterationRecord& rec = recs[i];
    CHECK(rec.n == 4);
    CHECK(rec.d == 2);
    CHECK(rec.sigma == 0.01);
    CHECK(rec.kind == LayoutKind::grid);
    CHECK(rec.trial == static_cast<int>(i));
    CHECK(rec.pivot == PivotRule::best);
    CHECK(rec.iterations == 1);
    CHECK(rec.len_init == doctest::Approx(crossed).epsilon(0.05));
    CHECK(rec.len_final == doctest::Approx(8.0).epsilon(0.05));
    CHECK(rec.len_final < rec.len_init);
    CHECK(rec.in_box);
    CHECK(rec.box_d > 0.0);
    CHECK(rec.ms == 0.0);  // timing off by default
  }
}

TEST_CASE("experiment records derive their seeds from the config seed") {
  ExperimentConfig cfg = crossed_square_config();
  std::vector<IterationRecord> recs = run_iteration_experiment(cfg);
  const std::uint64_t cell_seed = Rng::hash_combine(cfg.seed, 0);
  for (std::size_t i = 0; i < recs.size(); ++i)
    CHECK(recs[i].seed == Rng::hash_combine(cell_seed, i + 1));
}

TEST_CASE("experiment records are ordered by cell then trial") {
  ExperimentConfig cfg;
  cfg.n_grid = {4, 5};
  cfg.d_grid = {2};
  cfg.sigma_grid = {0.5, 0.25};
  cfg.trials = 2;
  cfg.seed = 7;
  std::vector<IterationRecord> recs = run_iteration_experiment(cfg);
  REQUIRE(recs.size() == 8);
  const int expect_n[] = {4, 4, 4, 4, 5, 5, 5, 5};
  const double expect_sigma[] = {0.5, 0.5, 0.25, 0.25, 0.5, 0.5, 0.25, 0.25};
  const int expect_trial[] = {0, 1, 0, 1, 0, 1, 0, 1};
  for (int i = 0; i < 8; ++i) {
    CHECK(recs[i].n == expect_n[i]);
    CHECK(recs[i].sigma == expect_sigma[i]);
    CHECK(recs[i].trial == expect_trial[i]);
    CHECK(recs[i].len_final <= recs[i].len_init);
  }
}

TEST_CASE("experiment output is reproducible and independent of jobs") {
  ExperimentConfig cfg = crossed_square_config();
  cfg.pivot = PivotRule::random;
  cfg.start = InitialTourKind::random;
  std::vector<IterationRecord> a = run_iteration_experiment(cfg);
  std::vector<IterationRecord> b = run_iteration_experiment(cfg);
  std::vector<IterationRecord> c = run_iteration_experiment(cfg, 3);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(a[i] == c[i]);
  }
  CHECK(iteration_records_csv(a) == iteration_records_csv(c));
}

TEST_CASE("experiment refuses n beyond the quadratic-scan guard") {
  ExperimentConfig cfg;
  cfg.n_grid = {4, 2048};
  CHECK_THROWS_WITH_AS(
      run_iteration_experiment(cfg),
      "experiment cell refused: n = 2048 exceeds the n <= 2000 guard for "
      "O(n^2) exchange scans",
      std::invalid_argument);
}

TEST_CASE("opt-in timing records positive wall clock") {
  ExperimentConfig cfg;
  cfg.n_grid = {32};
  cfg.trials = 2;
  cfg.seed = 11;
  cfg.record_timing = true;
  std::vector<IterationRecord> recs = run_iteration_experiment(cfg);
  REQUIRE(recs.size() == 2);
  for (const IterationRecord& rec : recs) CHECK(rec.ms > 0.0);
}

TEST_CASE("potential bound check on hand-built and real traces") {
  CHECK_THROWS_WITH_AS(potential_bound_check(RunTrace{}),
                       "potential bound check: empty trace",
                       std::invalid_argument);

  RunTrace idle;
  idle.lengths = {10.0};
  PotentialCheck none = potential_bound_check(idle);
  CHECK(none.bound == 0.0);
  CHECK(none.actual == 0.0);
  CHECK(none.pass);

  // Uncrossing the square: one move of size 2*sqrt(2) - 2 from length
  // 2 + 2*sqrt(2).
  PointSet ps = unit_square();
  Tour start = initial_tour(InitialTourKind::identity, ps);
  RunTrace trace = run_two_opt(start, ps, PivotRule::first);
  REQUIRE(trace.moves.size() == 1);
  PotentialCheck check = potential_bound_check(trace);
  CHECK(check.actual == 1.0);
  const double root2 = std::sqrt(2.0);
  CHECK(check.bound ==
        doctest::Approx((2.0 + 2.0 * root2) / (2.0 * root2 - 2.0)));
  CHECK(check.pass);

  AdversarialLayout layout = generate_adversarial(LayoutKind::uniform, 16, 2, 3);
  PointSet inst = perturb(layout, {0.5, 5});
  RunTrace longer = run_two_opt(initial_tour(InitialTourKind::random, inst, 9),
                                inst, PivotRule::best);
  PotentialCheck real = potential_bound_check(longer);
  CHECK(real.actual == static_cast<double>(longer.moves.size()));
  CHECK(real.pass);
  CHECK(real.bound >= real.actual);
}

TEST_CASE("tail quantity names round trip") {
  const TailQuantity all[] = {
      TailQuantity::delta_min, TailQuantity::linked_min_type0,
      TailQuantity::linked_min_type1, TailQuantity::conditioned_single};
  for (TailQuantity q : all) CHECK(tail_quantity_from_string(to_string(q)) == q);
  CHECK(to_string(TailQuantity::delta_min) == "delta_min");
  CHECK(to_string(TailQuantity::linked_min_type1) == "linked_min_type1");
  CHECK_THROWS_WITH_AS(tail_quantity_from_string("delta"),
                       "unknown tail quantity: delta", std::invalid_argument);
}

TEST_CASE("instance generator validates and reproduces") {
  AdversarialLayout layout = generate_adversarial(LayoutKind::uniform, 5, 2, 11);
  CHECK_THROWS_AS(smoothed_instance_generator(layout, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(smoothed_instance_generator(layout, 1.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(smoothed_instance_generator(AdversarialLayout{}, 0.5),
                  std::invalid_argument);

  InstanceGenerator gen = smoothed_instance_generator(layout, 0.5);
  PointSet a = gen(5);
  PointSet b = gen(5);
  PointSet c = gen(6);
  CHECK(a.coords == b.coords);
  CHECK(a.coords != c.coords);
  REQUIRE(a.provenance.has_value());
  CHECK(a.provenance->spec.sigma == 0.5);
  CHECK(a.provenance->spec.seed == 5);
}

TEST_CASE("tail estimate rejects malformed sampling plans") {
  AdversarialLayout layout = generate_adversarial(LayoutKind::uniform, 5, 2, 11);
  InstanceGenerator gen = smoothed_instance_generator(layout, 0.5);
  CHECK_THROWS_WITH_AS(
      estimate_tail(TailQuantity::delta_min, gen, {}, 1000, 1),
      "tail estimate: eps grid must be nonempty", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      estimate_tail(TailQuantity::delta_min, gen, {0.1, 0.0}, 1000, 1),
      "tail estimate: eps must be positive", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      estimate_tail(TailQuantity::delta_min, gen, {0.1, 0.1}, 1000, 1),
      "tail estimate: eps grid must be strictly decreasing",
      std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      estimate_tail(TailQuantity::delta_min, gen, {0.1}, 99, 1),
      "tail estimate: needs at least 100 trials", std::invalid_argument);
}

TEST_CASE("tail estimate reports insufficient data when nothing hits") {
  // The fixed exchange on the unit square has gain 2 - 2*sqrt(2) < 0 in
  // every trial, so the conditioned quantity never produces a value.
  PointSet square = unit_square();
  InstanceGenerator frozen = [square](std::uint64_t) { return square; };
  CHECK_THROWS_AS(estimate_tail(TailQuantity::conditioned_single, frozen,
                                {1.0, 0.1}, 200, 1),
                  InsufficientDataError);
}

TEST_CASE("saturated cells are reported but excluded from the fit") {
  // delta_min on the frozen square is the constant 2*sqrt(2) - 2, so both
  // windows saturate at p = 1 and no cell qualifies for the fit.
  PointSet square = unit_square();
  InstanceGenerator frozen = [square](std::uint64_t) { return square; };
  TailEstimate est =
      estimate_tail(TailQuantity::delta_min, frozen, {3.0, 1.0}, 200, 4);
  CHECK(est.n == 4);
  CHECK(est.d == 2);
  CHECK(est.sigma == 0.0);  // no provenance on a hand-built set
  REQUIRE(est.cells.size() == 2);
  for (const TailCell& cell : est.cells) {
    CHECK(cell.hits == 200);
    CHECK(cell.trials == 200);
    CHECK(cell.p == 1.0);
    CHECK(cell.ci_lo <= cell.p);
    CHECK(cell.ci_hi >= cell.p - 1e-12);
  }
  CHECK_FALSE(est.alpha_hat.has_value());
  CHECK_FALSE(est.c_hat.has_value());

  nlohmann::json j = nlohmann::json::parse(tail_estimate_json(est));
  CHECK(j["schema"] == 1);
  CHECK(j["kind"] == "tail_estimate");
  CHECK(j["alpha_hat"].is_null());
  CHECK(j["c_hat"].is_null());
  CHECK(j["cells"].size() == 2);
}

TEST_CASE("smallest-gain tail is near-linear in the window width") {
  AdversarialLayout layout = generate_adversarial(LayoutKind::uniform, 5, 2, 11);
  InstanceGenerator gen = smoothed_instance_generator(layout, 1.0);
  TailEstimate est = estimate_tail(TailQuantity::delta_min, gen,
                                   {0.03, 0.01, 0.003, 0.001}, 60000, 606);
  CHECK(est.quantity == TailQuantity::delta_min);
  CHECK(est.n == 5);
  CHECK(est.d == 2);
  CHECK(est.sigma == 1.0);
  CHECK(est.reference_exponent == 1.0);
  REQUIRE(est.cells.size() == 4);
  CHECK(est.cells[0].hits == 21466);
  CHECK(est.cells[1].hits == 9467);
  CHECK(est.cells[2].hits == 3454);
  CHECK(est.cells[3].hits == 1298);
  for (std::size_t i = 1; i < est.cells.size(); ++i)
    CHECK(est.cells[i].hits <= est.cells[i - 1].hits);
  for (const TailCell& cell : est.cells) {
    CHECK(cell.trials == 60000);
    CHECK(cell.ci_lo <= cell.p);
    CHECK(cell.p <= cell.ci_hi);
    CHECK(cell.ci_hi - cell.ci_lo > 0.0);
    CHECK(cell.ci_hi - cell.ci_lo < 0.02);
  }
  // The widest window sits at p = 0.358, above the saturation cut; the fit
  // uses the last three cells.
  REQUIRE(est.alpha_hat.has_value());
  CHECK(*est.alpha_hat == doctest::Approx(0.862532).epsilon(1e-4));
  CHECK(*est.c_hat == doctest::Approx(8.459774).epsilon(1e-3));
  CHECK(*est.alpha_hat > 0.7);
  CHECK(*est.alpha_hat < 1.3);

  nlohmann::json j = nlohmann::json::parse(tail_estimate_json(est));
  CHECK(j["quantity"] == "delta_min");
  CHECK(j["alpha_hat"].get<double>() == doctest::Approx(*est.alpha_hat));
  CHECK(j["cells"][0]["hits"] == 21466);
  CHECK(j["reference_exponent"] == 1.0);
}

TEST_CASE("tail estimate is independent of the job count") {
  AdversarialLayout layout = generate_adversarial(LayoutKind::uniform, 5, 2, 11);
  InstanceGenerator gen = smoothed_instance_generator(layout, 1.0);
  TailEstimate a =
      estimate_tail(TailQuantity::delta_min, gen, {0.1, 0.03}, 2000, 42, 1);
  TailEstimate b =
      estimate_tail(TailQuantity::delta_min, gen, {0.1, 0.03}, 2000, 42, 4);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].hits == b.cells[i].hits);
    CHECK(a.cells[i].p == b.cells[i].p);
  }
  CHECK(a.alpha_hat.has_value() == b.alpha_hat.has_value());
  CHECK(tail_estimate_csv(a) == tail_estimate_csv(b));
}

TEST_CASE("six-vertex linked tail steepens toward its quadratic reference") {
  AdversarialLayout layout = generate_adversarial(LayoutKind::uniform, 6, 2, 12);
  InstanceGenerator gen = smoothed_instance_generator(layout, 1.0);
  std::vector<double> grid;
  for (int k = 0; k < 6; ++k) grid.push_back(std::pow(10.0, -1.0 - 0.5 * k));
  TailEstimate est = estimate_tail(TailQuantity::linked_min_type0, gen, grid,
                                   100000, 919);
  CHECK(est.quantity == TailQuantity::linked_min_type0);
  CHECK(est.n == 6);
  CHECK(est.reference_exponent == 2.0);
  REQUIRE(est.alpha_hat.has_value());
  CHECK(*est.alpha_hat == doctest::Approx(1.670649).epsilon(1e-4));
  // Pre-asymptotic but clearly super-linear: the slope at reachable depths
  // sits between the single-exchange rate and the limiting square law.
  CHECK(*est.alpha_hat > 1.5);
  CHECK(*est.alpha_hat < 2.4);
}

TEST_CASE("conditioned single exchange shows the linear small-gain law") {
  AdversarialLayout layout = generate_adversarial(LayoutKind::uniform, 5, 2, 11);
  InstanceGenerator gen = smoothed_instance_generator(layout, 0.5);
  TailEstimate est = estimate_tail(TailQuantity::conditioned_single, gen,
                                   {0.2, 0.1, 0.05, 0.025}, 40000, 939);
  CHECK(est.sigma == 0.5);
  CHECK(est.reference_exponent == 1.0);
  REQUIRE(est.cells.size() == 4);
  CHECK(est.cells[0].hits == 4260);
  CHECK(est.cells[1].hits == 2066);
  CHECK(est.cells[2].hits == 1020);
  CHECK(est.cells[3].hits == 542);
  REQUIRE(est.alpha_hat.has_value());
  CHECK(*est.alpha_hat == doctest::Approx(0.994174).epsilon(1e-4));
  CHECK(*est.c_hat == doctest::Approx(0.517055).epsilon(1e-3));
}

TEST_CASE("five-vertex linked tail carries its 3/2 reference") {
  AdversarialLayout layout = generate_adversarial(LayoutKind::uniform, 5, 2, 11);
  InstanceGenerator gen = smoothed_instance_generator(layout, 0.5);
  TailEstimate est = estimate_tail(TailQuantity::linked_min_type1, gen,
                                   {10.0, 1.0}, 1000, 17);
  CHECK(est.quantity == TailQuantity::linked_min_type1);
  CHECK(est.reference_exponent == 1.5);
  CHECK(est.cells[0].hits > 0);
}

TEST_CASE("scaling fit recovers exact synthetic exponents") {
  std::vector<IterationRecord> recs;
  for (int n : {10, 20, 40, 80}) {
    for (int t = 0; t < 2; ++t) {
      IterationRecord rec;
      rec.n = n;
      rec.d = 2;
      rec.sigma = 0.5;
      rec.iterations = static_cast<std::uint64_t>(n) * n;
      recs.push_back(rec);
    }
  }
  ScalingFit fit = fit_scaling(recs, ScalingModel::iterations_vs_n);
  CHECK(fit.model == ScalingModel::iterations_vs_n);
  CHECK(fit.points == 4);
  CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.std_error == doctest::Approx(0.0).scale(1).epsilon(1e-10));
  CHECK(fit.ci_lo <= fit.exponent);
  CHECK(fit.ci_hi >= fit.exponent);
  CHECK(fit.reference == doctest::Approx(4.0 + 1.0 / 3.0));

  // One non-planar record switches the reference exponent.
  IterationRecord volume;
  volume.n = 80;
  volume.d = 3;
  volume.sigma = 0.5;
  volume.iterations = 6400;
  recs.push_back(volume);
  ScalingFit mixed = fit_scaling(recs, ScalingModel::iterations_vs_n);
  CHECK(mixed.reference == 4.0);
  CHECK(mixed.exponent == doctest::Approx(2.0).epsilon(1e-12));

  std::vector<IterationRecord> noise;
  int iters = 1;
  for (double sigma : {1.0, 0.5, 0.25, 0.125}) {
    IterationRecord rec;
    rec.n = 32;
    rec.d = 2;
    rec.sigma = sigma;
    rec.iterations = static_cast<std::uint64_t>(iters);
    iters *= 2;
    noise.push_back(rec);
  }
  ScalingFit inv = fit_scaling(noise, ScalingModel::iterations_vs_inv_sigma);
  CHECK(inv.exponent == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(inv.reference == 2.0);
  CHECK(inv.points == 4);
  CHECK(to_string(inv.model) == "iterations_vs_inv_sigma");

  nlohmann::json j = nlohmann::json::parse(scaling_fit_json(inv));
  CHECK(j["schema"] == 1);
  CHECK(j["kind"] == "scaling_fit");
  CHECK(j["model"] == "iterations_vs_inv_sigma");
  CHECK(j["points"] == 4);
  CHECK(j["reference"] == 2.0);
}

TEST_CASE("scaling fit needs three informative axis values") {
  CHECK_THROWS_WITH_AS(fit_scaling({}, ScalingModel::iterations_vs_n),
                       "scaling fit: no records", std::invalid_argument);

  std::vector<IterationRecord> two;
  for (int n : {10, 20}) {
    IterationRecord rec;
    rec.n = n;
    rec.sigma = 0.5;
    rec.iterations = 5;
    two.push_back(rec);
  }
  CHECK_THROWS_AS(fit_scaling(two, ScalingModel::iterations_vs_n),
                  std::invalid_argument);

  // A zero-mean group is dropped, leaving too few points.
  std::vector<IterationRecord> degenerate;
  for (int n : {10, 20, 40}) {
    IterationRecord rec;
    rec.n = n;
    rec.sigma = 0.5;
    rec.iterations = n == 10 ? 0 : 5;
    degenerate.push_back(rec);
  }
  CHECK_THROWS_AS(fit_scaling(degenerate, ScalingModel::iterations_vs_n),
                  std::invalid_argument);
}

TEST_CASE("iteration csv uses fixed columns and exact formatting") {
  CHECK(iteration_csv_header() ==
        "n,d,sigma,kind,trial,seed,iterations,len_init,len_final,D,in_box,"
        "pivot,ms");

  IterationRecord rec;
  rec.n = 8;
  rec.d = 2;
  rec.sigma = 0.5;
  rec.kind = LayoutKind::uniform;
  rec.trial = 3;
  rec.seed = 42;
  rec.iterations = 7;
  rec.len_init = 12.5;
  rec.len_final = 10.25;
  rec.box_d = 6.0;
  rec.in_box = true;
  rec.pivot = PivotRule::first;
  rec.ms = 0.0;
  CHECK(iteration_csv_row(rec) == "8,2,0.5,uniform,3,42,7,12.5,10.25,6,1,first,0");

  rec.in_box = false;
  rec.pivot = PivotRule::best;
  rec.ms = 1.5;
  CHECK(iteration_csv_row(rec) == "8,2,0.5,uniform,3,42,7,12.5,10.25,6,0,best,1.5");

  CHECK(iteration_records_csv({}) == iteration_csv_header() + "\n");
  CHECK(iteration_records_csv({rec}) ==
        iteration_csv_header() + "\n" + iteration_csv_row(rec) + "\n");
}

TEST_CASE("tail csv uses fixed columns and exact formatting") {
  CHECK(tail_csv_header() == "quantity,n,d,sigma,eps,hits,trials,p,ci_lo,ci_hi");

  TailEstimate est;
  est.quantity = TailQuantity::delta_min;
  est.n = 5;
  est.d = 2;
  est.sigma = 1.0;
  est.cells.push_back({0.5, 50, 1000, 0.0625, 0.25, 0.75});
  CHECK(tail_estimate_csv(est) ==
        "quantity,n,d,sigma,eps,hits,trials,p,ci_lo,ci_hi\n"
        "delta_min,5,2,1,0.5,50,1000,0.0625,0.25,0.75\n");
}

TEST_CASE("iteration records json envelope round trips") {
  ExperimentConfig cfg = crossed_square_config();
  cfg.trials = 3;
  std::vector<IterationRecord> recs = run_iteration_experiment(cfg);
  std::string text = iteration_records_json(cfg, recs);

  nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["schema"] == 1);
  CHECK(j["config"]["layout"] == "grid");
  CHECK(j["config"]["trials"] == 3);
  CHECK(j["records"].size() == 3);

  std::vector<IterationRecord> back = iteration_records_from_json(text);
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) CHECK(back[i] == recs[i]);
}

TEST_CASE("iteration records json rejects malformed envelopes") {
  CHECK_THROWS_AS(iteration_records_from_json("no"), ParseError);
  CHECK_THROWS_WITH_AS(iteration_records_from_json("[]"),
                       "iteration records: expected a schema-1 envelope",
                       ParseError);
  CHECK_THROWS_AS(iteration_records_from_json(R"({"schema": 2, "records": []})"),
                  ParseError);
  CHECK_THROWS_AS(iteration_records_from_json(R"({"schema": 1})"), ParseError);
  CHECK_THROWS_AS(
      iteration_records_from_json(R"({"schema": 1, "records": [{"n": 4}]})"),
      ParseError);
}

TEST_CASE("text files round trip and report unusable paths") {
  namespace fs = std::filesystem;
  const std::string path =
      (fs::temp_directory_path() / "s2o_harness_io_test.txt").string();
  const std::string payload = "quantity,n\ndelta_min,5\n";
  write_text_file(path, payload);
  CHECK(read_text_file(path) == payload);
  fs::remove(path);

  CHECK_THROWS_AS(read_text_file(path), std::runtime_error);
  CHECK_THROWS_AS(write_text_file("/nonexistent_dir_s2o/file.txt", "x"),
                  std::runtime_error);
}

}  // TEST_SUITE
