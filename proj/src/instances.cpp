#include "smoothed2opt/instances.hpp"

#include <cmath>
#include <cstring>
#include <set>

#include "smoothed2opt/random.hpp"

namespace smoothed2opt {

std::string to_string(LayoutKind kind) {
  switch (kind) {
    case LayoutKind::uniform: return "uniform";
    case LayoutKind::grid: return "grid";
    case LayoutKind::clustered: return "clustered";
    case LayoutKind::file: return "file";
  }
  throw std::logic_error("unknown layout kind");
}

LayoutKind layout_kind_from_string(const std::string& name) {
  if (name == "uniform") return LayoutKind::uniform;
  if (name == "grid") return LayoutKind::grid;
  if (name == "clustered") return LayoutKind::clustered;
  if (name == "file") return LayoutKind::file;
  throw std::invalid_argument("unknown layout kind: " + name);
}

namespace {

bool points_equal(const double* a, const double* b, int d) {
  return std::memcmp(a, b, sizeof(double) * static_cast<std::size_t>(d)) == 0;
}

struct PointLess {
  int d;
  bool operator()(const double* a, const double* b) const {
    for (int k = 0; k < d; ++k) {
      if (a[k] < b[k]) return true;
      if (a[k] > b[k]) return false;
    }
    return false;
  }
};

bool all_distinct(const std::vector<double>& coords, int n, int d) {
  std::set<const double*, PointLess> seen(PointLess{d});
  for (int i = 0; i < n; ++i) {
    if (!seen.insert(coords.data() + static_cast<std::size_t>(i) * d).second)
      return false;
  }
  return true;
}

// Draws one point; retried until distinct from all previous points so the
// layout invariant holds even for adversarially coincident draws.
template <typename Draw>
void emit_distinct(std::vector<double>& coords, int i, int d, Draw&& draw) {
  double* p = coords.data() + static_cast<std::size_t>(i) * d;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    draw(p);
    bool dup = false;
    for (int j = 0; j < i && !dup; ++j)
      dup = points_equal(coords.data() + static_cast<std::size_t>(j) * d, p, d);
    if (!dup) return;
  }
  throw std::logic_error("could not draw a distinct point in 1000 attempts");
}

double clamp_unit(double x) { return x < -1.0 ? -1.0 : (x > 1.0 ? 1.0 : x); }

}  // namespace

void validate_layout(const AdversarialLayout& layout) {
  if (layout.n < 4) throw std::invalid_argument("layout needs n >= 4");
  if (layout.d < 2) throw std::invalid_argument("layout needs d >= 2");
  if (layout.coords.size() !=
      static_cast<std::size_t>(layout.n) * layout.d)
    throw std::invalid_argument("layout coordinate count != n*d");
  for (double x : layout.coords)
    if (!(x >= -1.0 && x <= 1.0))
      throw std::invalid_argument("layout coordinate outside [-1, 1]");
  if (!all_distinct(layout.coords, layout.n, layout.d))
    throw std::invalid_argument("layout points must be pairwise distinct");
}

AdversarialLayout generate_adversarial(LayoutKind kind, int n, int d,
                                       std::uint64_t seed) {
  if (n < 4) throw std::invalid_argument("generate_adversarial needs n >= 4");
  if (d < 2) throw std::invalid_argument("generate_adversarial needs d >= 2");

  AdversarialLayout layout;
  layout.n = n;
  layout.d = d;
  layout.kind = kind;
  layout.coords.resize(static_cast<std::size_t>(n) * d);

  switch (kind) {
    case LayoutKind::uniform: {
      Rng rng(seed);
      for (int i = 0; i < n; ++i) {
        emit_distinct(layout.coords, i, d, [&](double* p) {
          for (int k = 0; k < d; ++k) p[k] = rng.uniform(-1.0, 1.0);
        });
      }
      break;
    }
    case LayoutKind::grid: {
      // Smallest axis count m with m^d >= n; first n grid nodes in
      // row-major order, axis values evenly spaced over [-1, 1].
      int m = 1;
      while (std::pow(static_cast<double>(m), d) < static_cast<double>(n)) ++m;
      for (int i = 0; i < n; ++i) {
        int rem = i;
        for (int k = d - 1; k >= 0; --k) {
          int idx = rem % m;
          rem /= m;
          layout.coords[static_cast<std::size_t>(i) * d + k] =
              m == 1 ? 0.0 : -1.0 + 2.0 * idx / (m - 1);
        }
      }
      break;
    }
    case LayoutKind::clustered: {
      // ceil(sqrt(n)) tight Gaussian blobs: near-coincident point groups
      // produce the small 2-change gains this generator exists to stress.
      Rng rng(seed);
      int k_clusters = static_cast<int>(std::ceil(std::sqrt(n)));
      std::vector<double> centers(static_cast<std::size_t>(k_clusters) * d);
      for (double& x : centers) x = rng.uniform(-1.0, 1.0);
      const double blob_sigma = 0.05;
      for (int i = 0; i < n; ++i) {
        const double* c =
            centers.data() + static_cast<std::size_t>(i % k_clusters) * d;
        emit_distinct(layout.coords, i, d, [&](double* p) {
          // Truncation to the cube by per-point rejection.
          for (int attempt = 0; attempt < 10000; ++attempt) {
            bool in_box = true;
            for (int kk = 0; kk < d; ++kk) {
              p[kk] = c[kk] + blob_sigma * rng.normal();
              in_box = in_box && p[kk] >= -1.0 && p[kk] <= 1.0;
            }
            if (in_box) return;
          }
          for (int kk = 0; kk < d; ++kk) p[kk] = clamp_unit(c[kk]);
        });
      }
      break;
    }
    case LayoutKind::file:
      throw std::invalid_argument(
          "kind=file marks loaded layouts; use load_instance");
  }

  validate_layout(layout);
  return layout;
}

PointSet perturb(const AdversarialLayout& layout, const PerturbationSpec& spec) {
  validate_layout(layout);
  if (!(spec.sigma > 0.0 && spec.sigma <= 1.0))
    throw std::invalid_argument("perturbation sigma must be in (0, 1]");

  PointSet ps;
  ps.n = layout.n;
  ps.d = layout.d;
  ps.coords.resize(layout.coords.size());
  Rng root(spec.seed);
  for (int i = 0; i < layout.n; ++i) {
    Rng point_rng = root.fork(static_cast<std::uint64_t>(i));
    for (int k = 0; k < layout.d; ++k) {
      std::size_t idx = static_cast<std::size_t>(i) * layout.d + k;
      ps.coords[idx] = layout.coords[idx] + spec.sigma * point_rng.normal();
    }
  }
  ps.provenance = Provenance{layout, spec};
  return ps;
}

double box_radius(double c, double sigma, double n) {
  return c * (1.0 + sigma * std::sqrt(n * std::log(n)));
}

BoxCheck bounding_box_check(const PointSet& ps, double c) {
  if (!(c >= 2.0)) throw std::invalid_argument("box constant must be >= 2");
  double sigma = ps.provenance ? ps.provenance->spec.sigma : 0.0;
  BoxCheck result;
  result.D = box_radius(c, sigma, static_cast<double>(ps.n));
  result.inside = true;
  for (double x : ps.coords)
    result.inside = result.inside && x >= -result.D && x <= result.D;
  return result;
}

}  // namespace smoothed2opt
