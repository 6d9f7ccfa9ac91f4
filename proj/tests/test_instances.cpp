#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "smoothed2opt/instances.hpp"
#include "smoothed2opt/random.hpp"

using namespace smoothed2opt;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "smoothed2opt_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::set<std::vector<double>> point_list(const std::vector<double>& coords,
                                         int n, int d) {
  std::set<std::vector<double>> out;
  for (int i = 0; i < n; ++i)
    out.insert(std::vector<double>(coords.begin() + i * d,
                                   coords.begin() + (i + 1) * d));
  return out;
}

}  // namespace

TEST_SUITE("instances") {

TEST_CASE("grid 4 points in 2d are the cube corners") {
  auto layout = generate_adversarial(LayoutKind::grid, 4, 2, 123);
  auto pts = point_list(layout.coords, 4, 2);
  std::set<std::vector<double>> want = {
      {-1.0, -1.0}, {-1.0, 1.0}, {1.0, -1.0}, {1.0, 1.0}};
  CHECK(pts == want);
}

TEST_CASE("grid takes a row-major prefix of the smallest covering lattice") {
  auto layout = generate_adversarial(LayoutKind::grid, 5, 2, 0);
  std::vector<double> want = {-1, -1, -1, 0, -1, 1, 0, -1, 0, 0};
  CHECK(layout.coords == want);

  auto full = generate_adversarial(LayoutKind::grid, 9, 2, 0);
  auto pts = point_list(full.coords, 9, 2);
  CHECK(pts.count({0.0, 0.0}) == 1);
  CHECK(pts.size() == 9);
}

TEST_CASE("generators are deterministic and honor the invariants") {
  for (auto kind :
       {LayoutKind::uniform, LayoutKind::grid, LayoutKind::clustered}) {
    auto a = generate_adversarial(kind, 100, 2, 7);
    auto b = generate_adversarial(kind, 100, 2, 7);
    CHECK(a.coords == b.coords);
    CHECK(a.kind == kind);
    CHECK_NOTHROW(validate_layout(a));
  }
  auto layout = generate_adversarial(LayoutKind::uniform, 50, 3, 1);
  CHECK(layout.n == 50);
  CHECK(layout.d == 3);
  for (double x : layout.coords) {
    CHECK(x >= -1.0);
    CHECK(x <= 1.0);
  }
  CHECK(point_list(layout.coords, 50, 3).size() == 50);
}

TEST_CASE("different seeds give different uniform layouts") {
  auto a = generate_adversarial(LayoutKind::uniform, 20, 2, 1);
  auto b = generate_adversarial(LayoutKind::uniform, 20, 2, 2);
  CHECK(a.coords != b.coords);
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(generate_adversarial(LayoutKind::uniform, 3, 2, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_adversarial(LayoutKind::uniform, 10, 1, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_adversarial(LayoutKind::file, 10, 2, 0),
                  std::invalid_argument);
}

TEST_CASE("clustered layouts concentrate around few centers") {
  auto layout = generate_adversarial(LayoutKind::clustered, 64, 2, 5);
  CHECK_NOTHROW(validate_layout(layout));
  // Median nearest-neighbor distance is far below the uniform-layout scale
  // because 64 points share ceil(sqrt(64)) = 8 tight blobs.
  std::vector<double> nn;
  for (int i = 0; i < layout.n; ++i) {
    double best = 1e300;
    for (int j = 0; j < layout.n; ++j) {
      if (i == j) continue;
      double dx = layout.point(i)[0] - layout.point(j)[0];
      double dy = layout.point(i)[1] - layout.point(j)[1];
      best = std::min(best, std::hypot(dx, dy));
    }
    nn.push_back(best);
  }
  std::sort(nn.begin(), nn.end());
  CHECK(nn[nn.size() / 2] < 0.08);
}

TEST_CASE("perturb is deterministic and records provenance") {
  auto layout = generate_adversarial(LayoutKind::uniform, 12, 2, 3);
  PerturbationSpec spec{0.3, 99};
  auto a = perturb(layout, spec);
  auto b = perturb(layout, spec);
  CHECK(a.coords == b.coords);
  REQUIRE(a.provenance.has_value());
  CHECK(a.provenance->spec.sigma == 0.3);
  CHECK(a.provenance->spec.seed == 99);
  CHECK(a.provenance->layout.coords == layout.coords);
}

TEST_CASE("vanishing noise stays vanishing") {
  auto layout = generate_adversarial(LayoutKind::grid, 4, 2, 0);
  for (std::uint64_t t = 0; t < 100; ++t) {
    auto ps = perturb(layout, PerturbationSpec{1e-15, t});
    for (std::size_t i = 0; i < ps.coords.size(); ++i)
      CHECK(std::fabs(ps.coords[i] - layout.coords[i]) < 1e-12);
  }
}

TEST_CASE("squared displacement of a point at the origin averages d sigma^2") {
  AdversarialLayout layout;
  layout.n = 4;
  layout.d = 2;
  layout.kind = LayoutKind::file;
  layout.coords = {0, 0, 1, 0, 0, 1, 1, 1};
  const int trials = 100000;
  double sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto ps = perturb(layout, PerturbationSpec{1.0, static_cast<std::uint64_t>(t)});
    double dx = ps.coords[0], dy = ps.coords[1];
    sum += dx * dx + dy * dy;
  }
  double mean = sum / trials;
  CHECK(mean == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("per-coordinate noise has mean 0 and variance sigma^2") {
  auto layout = generate_adversarial(LayoutKind::uniform, 4, 2, 11);
  const double sigma = 0.5;
  const int trials = 12500;  // 4 points x 2 coords x 12500 = 1e5 draws
  double sum = 0.0, sumsq = 0.0;
  std::size_t count = 0;
  for (int t = 0; t < trials; ++t) {
    auto ps = perturb(layout, PerturbationSpec{sigma, static_cast<std::uint64_t>(t)});
    for (std::size_t i = 0; i < ps.coords.size(); ++i) {
      double g = ps.coords[i] - layout.coords[i];
      sum += g;
      sumsq += g * g;
      ++count;
    }
  }
  double mean = sum / static_cast<double>(count);
  double var = sumsq / static_cast<double>(count) - mean * mean;
  CHECK(std::fabs(mean) < 0.01);
  CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.01));
}

TEST_CASE("noise for point i depends only on (seed, i)") {
  auto big = generate_adversarial(LayoutKind::uniform, 10, 3, 21);
  AdversarialLayout prefix = big;
  prefix.n = 6;
  prefix.coords.resize(6 * 3);
  PerturbationSpec spec{0.7, 777};
  auto ps_big = perturb(big, spec);
  auto ps_prefix = perturb(prefix, spec);
  for (std::size_t i = 0; i < ps_prefix.coords.size(); ++i)
    CHECK(ps_big.coords[i] == ps_prefix.coords[i]);
}

TEST_CASE("box radius formula and monotonicity") {
  const double e = std::exp(1.0);
  CHECK(box_radius(2.0, 1.0, e) ==
        doctest::Approx(2.0 * (1.0 + std::sqrt(e))).epsilon(1e-12));
  CHECK(box_radius(2.0, 1.0, e) == doctest::Approx(5.29744).epsilon(1e-5));
  CHECK(box_radius(3.0, 0.5, 100) > box_radius(2.0, 0.5, 100));
  CHECK(box_radius(2.0, 0.6, 100) > box_radius(2.0, 0.5, 100));
  CHECK(box_radius(2.0, 0.5, 101) > box_radius(2.0, 0.5, 100));
}

TEST_CASE("bounding box check") {
  PointSet origin;
  origin.n = 4;
  origin.d = 2;
  origin.coords.assign(8, 0.0);
  auto res = bounding_box_check(origin, 2.0);
  CHECK(res.inside);
  CHECK(res.D == doctest::Approx(2.0));  // sigma 0 without provenance

  CHECK_THROWS_AS(bounding_box_check(origin, 1.9), std::invalid_argument);

  PointSet outlier = origin;
  outlier.coords[0] = 50.0;
  CHECK_FALSE(bounding_box_check(outlier, 2.0).inside);
}

TEST_CASE("escape fraction at c=4 stays below 1e-3") {
  auto layout = generate_adversarial(LayoutKind::uniform, 100, 2, 42);
  int outside = 0;
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    auto ps = perturb(layout, PerturbationSpec{0.5, static_cast<std::uint64_t>(t)});
    if (!bounding_box_check(ps, 4.0).inside) ++outside;
  }
  CHECK(static_cast<double>(outside) / trials < 1e-3);
}

TEST_CASE("native json round trip is bit exact") {
  auto layout = generate_adversarial(LayoutKind::clustered, 10, 3, 9);
  auto ps = perturb(layout, PerturbationSpec{0.25, 4242});
  auto path = temp_file("roundtrip.json");
  save_instance(ps, path.string(), FileFormat::native_json);
  auto back = load_instance(path.string(), FileFormat::native_json);

  CHECK(back.n == ps.n);
  CHECK(back.d == ps.d);
  REQUIRE(back.coords.size() == ps.coords.size());
  CHECK(std::memcmp(back.coords.data(), ps.coords.data(),
                    ps.coords.size() * sizeof(double)) == 0);
  REQUIRE(back.provenance.has_value());
  CHECK(back.provenance->layout.kind == LayoutKind::clustered);
  CHECK(back.provenance->layout.coords == layout.coords);
  CHECK(back.provenance->spec.sigma == 0.25);
  CHECK(back.provenance->spec.seed == 4242);
}

TEST_CASE("native json without provenance round trips") {
  PointSet ps;
  ps.n = 4;
  ps.d = 2;
  ps.coords = {0.1, -0.2, 0.3, 0.4, -0.5, 0.6, 0.7, -0.8};
  auto path = temp_file("plain.json");
  save_instance(ps, path.string(), FileFormat::native_json);
  auto back = load_instance(path.string(), FileFormat::native_json);
  CHECK(back.coords == ps.coords);
  CHECK_FALSE(back.provenance.has_value());
}

TEST_CASE("tsplib euc2d ingestion") {
  auto path = temp_file("five.tsp");
  {
    std::ofstream out(path);
    out << "NAME: five\nTYPE: TSP\nCOMMENT: hand written\n";
    out << "DIMENSION: 5\nEDGE_WEIGHT_TYPE: EUC_2D\n";
    out << "NODE_COORD_SECTION\n";
    out << "1 0.0 0.0\n2 1.5 0.0\n3 1.5 2.25\n4 0.0 2.25\n5 0.75 1.0\n";
    out << "EOF\n";
  }
  auto ps = load_instance(path.string(), FileFormat::tsplib_euc2d);
  CHECK(ps.n == 5);
  CHECK(ps.d == 2);
  CHECK(ps.point(2)[1] == 2.25);
  CHECK(ps.point(4)[0] == 0.75);
}

TEST_CASE("tsplib round trip through save_instance") {
  auto layout = generate_adversarial(LayoutKind::uniform, 8, 2, 13);
  auto ps = perturb(layout, PerturbationSpec{0.1, 5});
  auto path = temp_file("eight.tsp");
  save_instance(ps, path.string(), FileFormat::tsplib_euc2d);
  auto back = load_instance(path.string(), FileFormat::tsplib_euc2d);
  CHECK(back.n == ps.n);
  CHECK(back.coords == ps.coords);

  PointSet d3;
  d3.n = 4;
  d3.d = 3;
  d3.coords.assign(12, 0.0);
  CHECK_THROWS_AS(save_instance(d3, path.string(), FileFormat::tsplib_euc2d),
                  std::invalid_argument);
}

TEST_CASE("tsplib error paths") {
  auto explicit_path = temp_file("explicit.tsp");
  {
    std::ofstream out(explicit_path);
    out << "DIMENSION: 4\nEDGE_WEIGHT_TYPE: EXPLICIT\nNODE_COORD_SECTION\n";
  }
  CHECK_THROWS_AS(
      load_instance(explicit_path.string(), FileFormat::tsplib_euc2d),
      UnsupportedFormatError);

  auto bad_line = temp_file("badline.tsp");
  {
    std::ofstream out(bad_line);
    out << "DIMENSION: 4\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n";
    out << "1 0 0\n2 oops 1\n3 1 0\n4 1 1\n";
  }
  try {
    load_instance(bad_line.string(), FileFormat::tsplib_euc2d);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 5") != std::string::npos);
  }

  auto mismatch = temp_file("mismatch.tsp");
  {
    std::ofstream out(mismatch);
    out << "DIMENSION: 6\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n";
    out << "1 0 0\n2 0 1\n3 1 0\n4 1 1\n";
  }
  CHECK_THROWS_AS(load_instance(mismatch.string(), FileFormat::tsplib_euc2d),
                  ParseError);
}

TEST_CASE("malformed json reports the line") {
  auto path = temp_file("broken.json");
  {
    std::ofstream out(path);
    out << "{\n  \"schema\": 1,\n  \"n\": oops\n}\n";
  }
  try {
    load_instance(path.string(), FileFormat::native_json);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  CHECK_THROWS(load_instance(temp_file("missing.json").string(),
                             FileFormat::native_json));
}

}  // TEST_SUITE
