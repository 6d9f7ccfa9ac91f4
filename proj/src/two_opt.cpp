#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "smoothed2opt/tour_engine.hpp"

namespace smoothed2opt {

std::string to_string(PivotRule rule) {
  switch (rule) {
    case PivotRule::first: return "first";
    case PivotRule::best: return "best";
    case PivotRule::random: return "random";
  }
  throw std::logic_error("unknown pivot rule");
}

PivotRule pivot_rule_from_string(const std::string& name) {
  if (name == "first") return PivotRule::first;
  if (name == "best") return PivotRule::best;
  if (name == "random") return PivotRule::random;
  throw std::invalid_argument("unknown pivot rule: " + name);
}

std::string to_string(Termination t) {
  return t == Termination::local_optimum ? "local-optimum" : "step-limit";
}

std::optional<TwoChange> find_improving(const Tour& tour, const PointSet& ps,
                                        PivotRule rule, double threshold,
                                        Rng* rng) {
  validate_tour(tour, ps);
  if (threshold < 0.0)
    throw std::invalid_argument("threshold must be nonnegative");
  if (rule == PivotRule::random && rng == nullptr)
    throw std::invalid_argument("random pivot rule needs an Rng");

  int n = tour.n();
  const std::vector<int>& t = tour.order;
  std::optional<TwoChange> chosen;
  std::uint64_t improving_seen = 0;

  for (int i = 0; i < n - 1; ++i) {
    // Edge (i, i+1) paired with every later vertex-disjoint edge (j, j+1).
    int j_end = (i == 0) ? n - 1 : n;
    double a_z1 = point_distance(ps, t[i], t[i + 1]);
    for (int j = i + 2; j < j_end; ++j) {
      int a = t[i], z1 = t[i + 1], b = t[(j + 1) % n], z2 = t[j];
      double d = a_z1 + point_distance(ps, b, z2) -
                 point_distance(ps, a, z2) - point_distance(ps, b, z1);
      if (!(d > threshold)) continue;
      switch (rule) {
        case PivotRule::first:
          return make_two_change(ps, a, z1, b, z2);
        case PivotRule::best:
          if (!chosen || d > chosen->delta)
            chosen = make_two_change(ps, a, z1, b, z2);
          break;
        case PivotRule::random:
          // Reservoir of size 1 keeps each improving move with equal odds.
          ++improving_seen;
          if (rng->uniform_index(improving_seen) == 0)
            chosen = make_two_change(ps, a, z1, b, z2);
          break;
      }
    }
  }
  return chosen;
}

RunTrace run_two_opt(const Tour& start, const PointSet& ps, PivotRule rule,
                     std::uint64_t step_limit, double threshold,
                     std::uint64_t seed) {
  validate_tour(start, ps);
  RunTrace trace;
  trace.initial_tour = start;
  trace.pivot = rule;
  trace.seed = seed;
  Rng rng(seed);

  Tour current = start;
  double length = tour_length(current, ps);
  trace.lengths.push_back(length);

  while (true) {
    double th = threshold < 0.0 ? 1e-12 * length : threshold;
    auto move = find_improving(current, ps, rule, th, &rng);
    if (!move) {
      trace.termination = Termination::local_optimum;
      break;
    }
    if (trace.moves.size() >= step_limit) {
      trace.termination = Termination::step_limit;
      break;
    }
    current = apply_two_change(current, *move);
    length -= move->delta;
    trace.moves.push_back(*move);
    trace.lengths.push_back(length);
  }
  trace.final_tour = current;
  return trace;
}

std::string run_trace_json(const RunTrace& trace) {
  nlohmann::json j;
  j["schema"] = 1;
  j["pivot"] = to_string(trace.pivot);
  j["seed"] = trace.seed;
  j["termination"] = to_string(trace.termination);
  j["initial_order"] = trace.initial_tour.order;
  j["final_order"] = trace.final_tour.order;
  j["lengths"] = trace.lengths;
  nlohmann::json moves = nlohmann::json::array();
  for (const TwoChange& m : trace.moves)
    moves.push_back({m.a, m.z1, m.b, m.z2});
  j["moves"] = std::move(moves);
  return j.dump(2);
}

std::string to_string(InitialTourKind kind) {
  switch (kind) {
    case InitialTourKind::identity: return "identity";
    case InitialTourKind::random: return "random";
    case InitialTourKind::greedy: return "greedy";
  }
  throw std::logic_error("unknown initial tour kind");
}

InitialTourKind initial_tour_kind_from_string(const std::string& name) {
  if (name == "identity") return InitialTourKind::identity;
  if (name == "random") return InitialTourKind::random;
  if (name == "greedy") return InitialTourKind::greedy;
  throw std::invalid_argument("unknown initial tour kind: " + name);
}

Tour initial_tour(InitialTourKind kind, const PointSet& ps,
                  std::uint64_t seed) {
  std::vector<int> order(ps.n);
  std::iota(order.begin(), order.end(), 0);
  switch (kind) {
    case InitialTourKind::identity:
      break;
    case InitialTourKind::random: {
      Rng rng(seed);
      for (int i = ps.n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.uniform_index(i + 1));
        std::swap(order[i], order[j]);
      }
      break;
    }
    case InitialTourKind::greedy: {
      std::vector<char> used(ps.n, 0);
      used[0] = 1;
      for (int step = 1; step < ps.n; ++step) {
        int from = order[step - 1];
        int pick = -1;
        double best = 0.0;
        for (int v = 0; v < ps.n; ++v) {
          if (used[v]) continue;
          double dist = point_distance(ps, from, v);
          if (pick < 0 || dist < best) {
            pick = v;
            best = dist;
          }
        }
        if (pick < 0) throw std::logic_error("greedy tour: no unused vertex");
        order[step] = pick;
        used[pick] = 1;
      }
      break;
    }
  }
  return make_canonical(std::move(order));
}

}  // namespace smoothed2opt
