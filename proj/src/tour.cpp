#include <algorithm>
#include <cmath>
#include <limits>

#include "smoothed2opt/tour_engine.hpp"

namespace smoothed2opt {

Tour make_canonical(std::vector<int> order) {
  int n = static_cast<int>(order.size());
  if (n < 4) throw std::invalid_argument("tour needs at least 4 vertices");
  std::vector<char> seen(n, 0);
  for (int v : order) {
    if (v < 0 || v >= n || seen[v])
      throw std::invalid_argument("tour order is not a permutation of 0..n-1");
    seen[v] = 1;
  }

  int at0 = static_cast<int>(
      std::find(order.begin(), order.end(), 0) - order.begin());
  std::rotate(order.begin(), order.begin() + at0, order.end());
  if (order[1] > order[n - 1]) {
    std::reverse(order.begin() + 1, order.end());
  }
  return Tour{std::move(order)};
}

void validate_tour(const Tour& tour, const PointSet& ps) {
  int n = tour.n();
  if (n != ps.n)
    throw std::invalid_argument("tour size does not match point count");
  std::vector<char> seen(n, 0);
  for (int v : tour.order) {
    if (v < 0 || v >= n || seen[v])
      throw std::invalid_argument("tour order is not a permutation of 0..n-1");
    seen[v] = 1;
  }
  if (tour.order[0] != 0 || tour.order[1] > tour.order[n - 1])
    throw std::invalid_argument("tour is not in canonical form");
}

double point_distance(const PointSet& ps, int i, int j) {
  const double* p = ps.point(i);
  const double* q = ps.point(j);
  double sum = 0.0;
  for (int k = 0; k < ps.d; ++k) {
    double diff = p[k] - q[k];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

namespace {

void require_distinct4(const PointSet& ps, int a, int z1, int b, int z2) {
  int idx[4] = {a, z1, b, z2};
  for (int i = 0; i < 4; ++i) {
    if (idx[i] < 0 || idx[i] >= ps.n)
      throw std::invalid_argument("vertex index out of range");
    for (int j = i + 1; j < 4; ++j)
      if (idx[i] == idx[j])
        throw std::invalid_argument("2-change needs four distinct vertices");
  }
}

}  // namespace

double delta(const PointSet& ps, int a, int z1, int b, int z2) {
  require_distinct4(ps, a, z1, b, z2);
  return point_distance(ps, a, z1) + point_distance(ps, b, z2) -
         point_distance(ps, a, z2) - point_distance(ps, b, z1);
}

TwoChange make_two_change(const PointSet& ps, int a, int z1, int b, int z2) {
  double d = delta(ps, a, z1, b, z2);
  // The four labelings below leave the removed and added edge sets (and
  // hence d) unchanged; pick the one led by the smallest vertex.
  int variants[4][4] = {
      {a, z1, b, z2}, {z1, a, z2, b}, {b, z2, a, z1}, {z2, b, z1, a}};
  int* best = variants[0];
  for (auto& v : variants)
    if (v[0] < best[0]) best = v;
  return TwoChange{best[0], best[1], best[2], best[3], d};
}

double law_of_cosines_eta(double A, double R, double phi) {
  if (!(A > 0.0) || !(R > 0.0))
    throw std::invalid_argument("law_of_cosines_eta needs A > 0 and R > 0");
  if (!(phi >= 0.0 && phi <= std::acos(-1.0)))
    throw std::invalid_argument("angle must lie in [0, pi]");
  double sq = A * A + R * R - 2.0 * A * R * std::cos(phi);
  return A - std::sqrt(std::max(sq, 0.0));
}

Tour apply_two_change(const Tour& tour, const TwoChange& move) {
  int n = tour.n();
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    int v = tour.order[i];
    if (v < 0 || v >= n)
      throw std::invalid_argument("tour order is not a permutation of 0..n-1");
    pos[v] = i;
  }
  for (int p : pos)
    if (p < 0)
      throw std::invalid_argument("tour order is not a permutation of 0..n-1");

  // Locate the removed edges as consecutive tour positions.
  auto edge_start = [&](int u, int v) -> int {
    int pu = pos[u], pv = pos[v];
    if ((pu + 1) % n == pv) return pu;
    if ((pv + 1) % n == pu) return pv;
    throw std::invalid_argument("removed edge is not a tour edge");
  };
  if (move.a >= n || move.z1 >= n || move.b >= n || move.z2 >= n ||
      move.a < 0 || move.z1 < 0 || move.b < 0 || move.z2 < 0)
    throw std::invalid_argument("move vertex out of range");
  int i = edge_start(move.a, move.z1);
  int j = edge_start(move.b, move.z2);
  if (i == j) throw std::invalid_argument("removed edges coincide");
  if (i > j) std::swap(i, j);
  if (j == i + 1 || (i == 0 && j == n - 1))
    throw std::invalid_argument("removed edges share a vertex");

  // Reversing the segment between the edges replaces {t[i],t[i+1]},
  // {t[j],t[j+1]} with {t[i],t[j]}, {t[i+1],t[j+1]}; any other reconnection
  // splits the tour into two cycles.
  auto same_edge = [](int u, int v, int x, int y) {
    return (u == x && v == y) || (u == y && v == x);
  };
  int u0 = tour.order[i], u1 = tour.order[i + 1];
  int v0 = tour.order[j], v1 = tour.order[(j + 1) % n];
  bool ok = (same_edge(move.a, move.z2, u0, v0) &&
             same_edge(move.b, move.z1, u1, v1)) ||
            (same_edge(move.a, move.z2, u1, v1) &&
             same_edge(move.b, move.z1, u0, v0));
  if (!ok)
    throw std::invalid_argument(
        "added edges do not reconnect the tour (would split it)");

  std::vector<int> order = tour.order;
  int inner = j - i;  // length of the segment order[i+1..j]
  if (inner <= n - inner) {
    std::reverse(order.begin() + i + 1, order.begin() + j + 1);
  } else {
    // Reverse the complementary (shorter) arc order[j+1 .. i] cyclically.
    int lo = j + 1, hi = i + n;
    while (lo < hi) {
      std::swap(order[lo % n], order[hi % n]);
      ++lo;
      --hi;
    }
  }
  return make_canonical(std::move(order));
}

double tour_length(const Tour& tour, const PointSet& ps) {
  validate_tour(tour, ps);
  int n = tour.n();
  double total = 0.0;
  for (int i = 0; i < n; ++i)
    total += point_distance(ps, tour.order[i], tour.order[(i + 1) % n]);
  return total;
}

std::optional<MinImprovement> min_improvement(const PointSet& ps) {
  if (ps.n < 4) throw std::invalid_argument("min_improvement needs n >= 4");
  double best = std::numeric_limits<double>::infinity();
  TwoChange witness;
  bool found = false;

  // Every 2-change on the 4-subset {w,x,y,z} removes one of the three edge
  // pairings and adds one of the other two; scanning the six ordered
  // exchanges per subset covers them all.
  auto consider = [&](int a, int z1, int b, int z2) {
    double d = point_distance(ps, a, z1) + point_distance(ps, b, z2) -
               point_distance(ps, a, z2) - point_distance(ps, b, z1);
    if (d > 0.0 && d < best) {
      best = d;
      witness = make_two_change(ps, a, z1, b, z2);
      found = true;
    }
  };

  for (int w = 0; w < ps.n; ++w)
    for (int x = w + 1; x < ps.n; ++x)
      for (int y = x + 1; y < ps.n; ++y)
        for (int z = y + 1; z < ps.n; ++z) {
          consider(w, x, y, z);
          consider(w, x, z, y);
          consider(w, y, x, z);
          consider(w, y, z, x);
          consider(w, z, x, y);
          consider(w, z, y, x);
        }

  if (!found) return std::nullopt;
  return MinImprovement{best, witness};
}

}  // namespace smoothed2opt
