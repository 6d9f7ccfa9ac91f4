#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace smoothed2opt {

// Malformed input file; message carries the offending line where known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Recognized file, unsupported variant (e.g. non-Euclidean edge weights).
class UnsupportedFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LayoutKind { uniform, grid, clustered, file };

std::string to_string(LayoutKind kind);
LayoutKind layout_kind_from_string(const std::string& name);

// Adversarial point layout. Invariants: n >= 4, d >= 2, every coordinate in
// [-1, 1], points pairwise distinct under exact comparison.
struct AdversarialLayout {
  int n = 0;
  int d = 0;
  LayoutKind kind = LayoutKind::file;
  std::vector<double> coords;  // row-major, n*d entries

  const double* point(int i) const {
    return coords.data() + static_cast<std::size_t>(i) * d;
  }
};

// Throws std::invalid_argument when any AdversarialLayout invariant fails.
void validate_layout(const AdversarialLayout& layout);

// Gaussian noise scale and reproducibility seed; requires 0 < sigma <= 1.
struct PerturbationSpec {
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

struct Provenance {
  AdversarialLayout layout;
  PerturbationSpec spec;
};

// Perturbed instance. n >= 4, d >= 2; when provenance is present,
// coords[i] = provenance.layout.coords[i] + the Gaussian draw for index i.
struct PointSet {
  int n = 0;
  int d = 0;
  std::vector<double> coords;  // row-major, n*d entries
  std::optional<Provenance> provenance;

  const double* point(int i) const {
    return coords.data() + static_cast<std::size_t>(i) * d;
  }
};

// Deterministic per (kind, n, d, seed). grid ignores the seed. clustered
// places ceil(sqrt(n)) Gaussian blobs truncated to the unit cube. kind=file
// is reserved for loaded layouts and rejected here.
AdversarialLayout generate_adversarial(LayoutKind kind, int n, int d,
                                       std::uint64_t seed);

// Adds an independent N(0, sigma^2 I_d) draw to each point. The draw for
// point i is a pure function of (spec.seed, i), so shared prefixes of two
// layouts perturb identically under the same spec.
PointSet perturb(const AdversarialLayout& layout, const PerturbationSpec& spec);

// Box half-width D = c * (1 + sigma * sqrt(n * ln n)), natural logarithm.
// n is real-valued so the formula can be probed off the integer grid.
double box_radius(double c, double sigma, double n);

struct BoxCheck {
  double D = 0.0;
  bool inside = true;
};

// Requires c >= 2. sigma is taken from provenance when present, else 0
// (an unperturbed set). inside means every coordinate lies in [-D, D].
BoxCheck bounding_box_check(const PointSet& ps, double c);

enum class FileFormat { native_json, tsplib_euc2d };

// native_json round-trips coordinates and provenance bit-exactly.
// tsplib_euc2d writes/reads the EUC_2D NODE_COORD_SECTION flavor, d = 2 only,
// coordinates taken verbatim with no rescaling.
void save_instance(const PointSet& ps, const std::string& path,
                   FileFormat format);
PointSet load_instance(const std::string& path, FileFormat format);

}  // namespace smoothed2opt
