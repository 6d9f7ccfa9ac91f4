#pragma once

#include <cstdint>
#include <utility>

namespace smoothed2opt {

// Deterministic counter-based generator. Streams are defined entirely by the
// 64-bit seed, so any (seed, index) pair reproduces the same draws on every
// platform and thread schedule. fork(i) derives an independent substream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(mix(seed ^ kGolden)) {}

  std::uint64_t next_u64();

  // Uniform on (0, 1]; never returns 0 so log() stays finite.
  double uniform();
  // Uniform on [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer in [0, n), n >= 1.
  std::uint64_t uniform_index(std::uint64_t n);

  // Standard normal via the Box-Muller transform; pairs are cached.
  double normal();
  std::pair<double, double> normal_pair();

  // Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape > 0.
  double gamma(double shape);
  // Beta(a, b) from two gamma draws; a, b > 0.
  double beta(double a, double b);

  Rng fork(std::uint64_t index) const;

  static std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b);

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static std::uint64_t mix(std::uint64_t z);

  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace smoothed2opt
