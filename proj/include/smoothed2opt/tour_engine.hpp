#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "smoothed2opt/instances.hpp"
#include "smoothed2opt/random.hpp"

namespace smoothed2opt {

// Canonical form: order[0] = 0 and order[1] < order[n-1], which fixes the
// rotation and reversal symmetries of a cyclic tour.
struct Tour {
  std::vector<int> order;
  int n() const { return static_cast<int>(order.size()); }
};

// Validates that `order` is a permutation of {0..n-1} and returns the
// canonical representative of its rotation/reversal class.
Tour make_canonical(std::vector<int> order);

// Throws std::invalid_argument unless tour is canonical and sized for ps.
void validate_tour(const Tour& tour, const PointSet& ps);

double point_distance(const PointSet& ps, int i, int j);

// Exchange of tour edges {a,z1},{b,z2} for {a,z2},{b,z1}; delta > 0 means
// the exchange shortens the tour by delta.
struct TwoChange {
  int a = 0, z1 = 0, b = 0, z2 = 0;
  double delta = 0.0;
};

// Computes delta = |a-z1| + |b-z2| - |a-z2| - |b-z1| and relabels to the
// canonical representative: of the four labelings fixing the removed and
// added edge sets, the one whose first vertex index is smallest.
TwoChange make_two_change(const PointSet& ps, int a, int z1, int b, int z2);

double delta(const PointSet& ps, int a, int z1, int b, int z2);

// eta = A - sqrt(A^2 + R^2 - 2 A R cos(phi)), the length change of one
// reconnected edge given old length A, pivot distance R and opening angle.
// Requires A > 0, R > 0, phi in [0, pi]. Result lies in (-R, R].
double law_of_cosines_eta(double A, double R, double phi);

// Requires both removed edges to be edges of `tour` and the added edges to
// reconnect the two remaining paths into one cycle; throws otherwise.
// The shorter arc is reversed; the result is canonical.
Tour apply_two_change(const Tour& tour, const TwoChange& move);

double tour_length(const Tour& tour, const PointSet& ps);

enum class PivotRule { first, best, random };

std::string to_string(PivotRule rule);
PivotRule pivot_rule_from_string(const std::string& name);

// Scans all vertex-disjoint tour edge pairs for a move with delta >
// threshold. `first` takes the lexicographically first position pair (i, j);
// `best` a maximum-delta move; `random` a uniform choice among improving
// moves drawn from *rng (required for that rule only).
std::optional<TwoChange> find_improving(const Tour& tour, const PointSet& ps,
                                        PivotRule rule, double threshold = 0.0,
                                        Rng* rng = nullptr);

enum class Termination { local_optimum, step_limit };

std::string to_string(Termination t);

// lengths[0] is the initial tour length; lengths[k+1] = lengths[k] -
// moves[k].delta, so lengths has one more entry than moves and decreases
// strictly.
struct RunTrace {
  Tour initial_tour;
  Tour final_tour;
  std::vector<TwoChange> moves;
  std::vector<double> lengths;
  PivotRule pivot = PivotRule::first;
  Termination termination = Termination::local_optimum;
  std::uint64_t seed = 0;
};

// Runs 2-opt until no improving move remains or step_limit is hit.
// threshold < 0 selects the adaptive default 1e-12 * current tour length,
// a guard against float-precision non-termination.
RunTrace run_two_opt(const Tour& start, const PointSet& ps, PivotRule rule,
                     std::uint64_t step_limit = UINT64_MAX,
                     double threshold = -1.0, std::uint64_t seed = 0);

std::string run_trace_json(const RunTrace& trace);

enum class InitialTourKind { identity, random, greedy };

std::string to_string(InitialTourKind kind);
InitialTourKind initial_tour_kind_from_string(const std::string& name);

// identity: 0..n-1. random: seeded shuffle. greedy: nearest neighbor from
// vertex 0, ties to the lowest index.
Tour initial_tour(InitialTourKind kind, const PointSet& ps,
                  std::uint64_t seed = 0);

struct MinImprovement {
  double delta_min = 0.0;
  TwoChange move;  // a witnessing exchange attaining delta_min
};

// Instance-level minimum over every 2-change on every 4-subset: for each of
// the three pairings of a 4-subset into two removed edges and each of the
// two reconnections, the strictly positive deltas are ranked and the
// smallest is returned; nullopt when no exchange has delta > 0.
std::optional<MinImprovement> min_improvement(const PointSet& ps);

}  // namespace smoothed2opt
