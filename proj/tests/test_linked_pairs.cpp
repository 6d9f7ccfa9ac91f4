#include <array>
#include <map>
#include <set>
#include <vector>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "smoothed2opt/linked_pairs.hpp"

using namespace smoothed2opt;

namespace {

PointSet random_points(int n, int d, std::uint64_t seed, double scale = 1.0) {
  Rng rng(seed);
  PointSet ps;
  ps.n = n;
  ps.d = d;
  ps.coords.resize(static_cast<std::size_t>(n) * d);
  for (double& x : ps.coords) x = scale * rng.uniform(-1.0, 1.0);
  return ps;
}

// Every 2-change, one canonical record per exchange: 3 pairings of each
// 4-subset, 2 reconnections each.
std::vector<TwoChange> all_moves(const PointSet& ps) {
  std::vector<TwoChange> moves;
  for (int i = 0; i < ps.n; ++i)
    for (int j = i + 1; j < ps.n; ++j)
      for (int k = j + 1; k < ps.n; ++k)
        for (int l = k + 1; l < ps.n; ++l) {
          moves.push_back(make_two_change(ps, i, j, k, l));
          moves.push_back(make_two_change(ps, i, j, l, k));
          moves.push_back(make_two_change(ps, i, k, j, l));
          moves.push_back(make_two_change(ps, i, k, l, j));
          moves.push_back(make_two_change(ps, i, l, j, k));
          moves.push_back(make_two_change(ps, i, l, k, j));
        }
  return moves;
}

using PairKey = std::array<int, 8>;

PairKey pair_key(const TwoChange& m1, const TwoChange& m2) {
  std::array<int, 4> t1 = {m1.a, m1.z1, m1.b, m1.z2};
  std::array<int, 4> t2 = {m2.a, m2.z1, m2.b, m2.z2};
  if (t2 < t1) std::swap(t1, t2);
  return {t1[0], t1[1], t1[2], t1[3], t2[0], t2[1], t2[2], t2[3]};
}

struct BruteCensus {
  std::map<LinkedKind, std::set<PairKey>> pairs;
  std::map<LinkedKind, double> min_sum;
};

// Quadratic scan over all move pairs; classification is reused as ground
// truth for the structured enumeration.
BruteCensus brute_census(const PointSet& ps) {
  BruteCensus census;
  auto moves = all_moves(ps);
  for (std::size_t i = 0; i < moves.size(); ++i)
    for (std::size_t j = i + 1; j < moves.size(); ++j) {
      auto pair = classify_pair(moves[i], moves[j]);
      if (!pair) continue;
      census.pairs[pair->kind].insert(pair_key(moves[i], moves[j]));
      if (moves[i].delta > 0.0 && moves[j].delta > 0.0) {
        double sum = moves[i].delta + moves[j].delta;
        auto it = census.min_sum.find(pair->kind);
        if (it == census.min_sum.end() || sum < it->second)
          census.min_sum[pair->kind] = sum;
      }
    }
  return census;
}

}  // namespace

TEST_SUITE("linked_pairs") {

TEST_CASE("classify recognizes a six-vertex pair") {
  // First move removes {2,5}; second adds it back between fresh vertices.
  TwoChange m1{0, 1, 2, 5, 0.0};
  TwoChange m2{2, 3, 4, 5, 0.0};
  auto pair = classify_pair(m1, m2);
  REQUIRE(pair.has_value());
  CHECK(pair->kind == LinkedKind::type0);
  CHECK(pair->vertex_count == 6);
  REQUIRE(pair->shared_edges.size() == 1);
  CHECK(pair->shared_edges[0] == Edge{2, 5});

  auto flipped = classify_pair(m2, m1);
  REQUIRE(flipped.has_value());
  CHECK(flipped->kind == LinkedKind::type0);
  CHECK(flipped->shared_edges == pair->shared_edges);
}

TEST_CASE("classify recognizes a five-vertex single-shared-edge pair") {
  // m1 adds {0,3}; m2 removes it; only that edge is common.
  TwoChange m1{0, 1, 2, 3, 0.0};
  TwoChange m2{3, 0, 4, 1, 0.0};
  auto pair = classify_pair(m1, m2);
  REQUIRE(pair.has_value());
  CHECK(pair->kind == LinkedKind::type1a);
  CHECK(pair->vertex_count == 5);
  REQUIRE(pair->shared_edges.size() == 1);
  CHECK(pair->shared_edges[0] == Edge{0, 3});
}

TEST_CASE("classify recognizes a five-vertex double-shared-edge pair") {
  // m1: removes {0,1},{2,3}, adds {0,3},{1,2}.
  // m2: removes {1,2},{0,4}, adds {0,1},{2,4}.
  // {0,1} and {1,2} each flow from one move's removal to the other's add.
  TwoChange m1{0, 1, 2, 3, 0.0};
  TwoChange m2{1, 2, 4, 0, 0.0};
  auto pair = classify_pair(m1, m2);
  REQUIRE(pair.has_value());
  CHECK(pair->kind == LinkedKind::type1b);
  CHECK(pair->vertex_count == 5);
  REQUIRE(pair->shared_edges.size() == 2);
  CHECK(pair->shared_edges[0] == Edge{0, 1});
  CHECK(pair->shared_edges[1] == Edge{1, 2});
}

TEST_CASE("classify rejects unlinked and four-vertex pairs") {
  // Disjoint vertex sets.
  CHECK_FALSE(classify_pair(TwoChange{0, 1, 2, 3, 0.0},
                            TwoChange{4, 5, 6, 7, 0.0}).has_value());
  // {0,3} is added by both moves: common but never removed-then-added.
  CHECK_FALSE(classify_pair(TwoChange{0, 1, 2, 3, 0.0},
                            TwoChange{0, 4, 1, 3, 0.0}).has_value());
  // The inverse exchange is linked but uses only four vertices.
  CHECK_FALSE(classify_pair(TwoChange{0, 1, 2, 3, 0.0},
                            TwoChange{0, 3, 2, 1, 0.0}).has_value());
  // Structurally invalid move.
  CHECK_THROWS_AS(classify_pair(TwoChange{0, 0, 1, 2, 0.0},
                                TwoChange{0, 1, 2, 3, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("enumeration matches the brute-force census") {
  for (int n : {5, 6, 7}) {
    PointSet ps = random_points(n, 2, 40 + n);
    BruteCensus brute = brute_census(ps);
    for (LinkedKind kind :
         {LinkedKind::type0, LinkedKind::type1a, LinkedKind::type1b}) {
      std::set<PairKey> streamed;
      std::uint64_t visits = 0;
      enumerate_linked_pairs(ps, kind, [&](const LinkedPair& pair) {
        ++visits;
        streamed.insert(pair_key(pair.first, pair.second));
        CHECK(pair.kind == kind);
        auto recheck = classify_pair(pair.first, pair.second);
        REQUIRE(recheck.has_value());
        CHECK(recheck->kind == kind);
        CHECK(recheck->vertex_count == pair.vertex_count);
        return true;
      });
      CHECK(visits == streamed.size());  // no duplicates
      CHECK(streamed == brute.pairs[kind]);
    }
  }
}

TEST_CASE("pair counts follow the closed-form tallies") {
  // Removers of a fixed edge: (n-2)(n-3); adders over fresh vertices:
  // (n-4)(n-5); times n(n-1)/2 edges.
  for (int n : {6, 7, 8}) {
    PointSet ps = random_points(n, 2, n);
    std::uint64_t want = 1;
    for (int f = n; f > n - 6; --f) want *= static_cast<std::uint64_t>(f);
    CHECK(count_linked_pairs(ps, LinkedKind::type0) == want / 2);
  }
  PointSet five = random_points(5, 2, 1);
  CHECK(count_linked_pairs(five, LinkedKind::type0) == 0);
  CHECK(count_linked_pairs(five, LinkedKind::type1a) > 0);
  CHECK(count_linked_pairs(five, LinkedKind::type1b) > 0);

  PointSet four = random_points(4, 2, 2);
  CHECK(count_linked_pairs(four, LinkedKind::type0) == 0);
  CHECK(count_linked_pairs(four, LinkedKind::type1a) == 0);
  CHECK(count_linked_pairs(four, LinkedKind::type1b) == 0);
}

TEST_CASE("type1 census scales as n^5 between consecutive sizes") {
  PointSet a = random_points(6, 2, 3);
  PointSet b = random_points(7, 2, 3);
  // Each type1a pair has one linking edge, each type1b two, and the
  // (pair, linking edge) tuples number 2 n(n-1)(n-2)(n-3)(n-4).
  double count_a =
      static_cast<double>(count_linked_pairs(a, LinkedKind::type1a) +
                          2 * count_linked_pairs(a, LinkedKind::type1b));
  double count_b =
      static_cast<double>(count_linked_pairs(b, LinkedKind::type1a) +
                          2 * count_linked_pairs(b, LinkedKind::type1b));
  CHECK(count_a == doctest::Approx(2.0 * 6 * 5 * 4 * 3 * 2));
  CHECK(count_b == doctest::Approx(2.0 * 7 * 6 * 5 * 4 * 3));
}

TEST_CASE("min_linked_improvement equals brute force") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    PointSet ps = random_points(6, 2 + static_cast<int>(seed % 2), 60 + seed);
    BruteCensus brute = brute_census(ps);
    for (LinkedKind kind :
         {LinkedKind::type0, LinkedKind::type1a, LinkedKind::type1b}) {
      auto lib = min_linked_improvement(ps, kind);
      auto it = brute.min_sum.find(kind);
      REQUIRE(lib.has_value() == (it != brute.min_sum.end()));
      if (lib) {
        CHECK(lib->delta_sum == doctest::Approx(it->second).epsilon(1e-12));
        CHECK(lib->pair.first.delta > 0.0);
        CHECK(lib->pair.second.delta > 0.0);
        CHECK(lib->pair.kind == kind);
      }
    }
  }
}

TEST_CASE("min linked improvement scales linearly and dominates delta_min") {
  PointSet ps = random_points(6, 2, 91);
  PointSet scaled = ps;
  for (double& x : scaled.coords) x *= 3.0;
  for (LinkedKind kind :
       {LinkedKind::type0, LinkedKind::type1a, LinkedKind::type1b}) {
    auto base = min_linked_improvement(ps, kind);
    auto big = min_linked_improvement(scaled, kind);
    REQUIRE(base.has_value());
    REQUIRE(big.has_value());
    CHECK(big->delta_sum == doctest::Approx(3.0 * base->delta_sum).epsilon(1e-12));
  }

  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    PointSet inst = random_points(6, 2, 300 + seed);
    auto dmin = min_improvement(inst);
    REQUIRE(dmin.has_value());
    for (LinkedKind kind :
         {LinkedKind::type0, LinkedKind::type1a, LinkedKind::type1b}) {
      auto linked = min_linked_improvement(inst, kind);
      if (linked) CHECK(linked->delta_sum >= dmin->delta_min - 1e-15);
    }
  }
}

TEST_CASE("extract_disjoint_pairs greedy matching") {
  RunTrace trace;
  trace.moves = {TwoChange{0, 1, 2, 5, 0.0}, TwoChange{2, 3, 4, 5, 0.0}};
  auto pairs = extract_disjoint_pairs(trace);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].kind == LinkedKind::type0);

  RunTrace unlinked;
  unlinked.moves = {TwoChange{0, 1, 2, 3, 0.0}, TwoChange{4, 5, 6, 7, 0.0}};
  CHECK(extract_disjoint_pairs(unlinked).empty());

  RunTrace tiny;
  tiny.moves = {TwoChange{0, 1, 2, 3, 0.0}};
  CHECK(extract_disjoint_pairs(tiny).empty());
}

TEST_CASE("extracted pairs are disjoint and classified on real traces") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    PointSet ps = random_points(30, 2, 500 + seed);
    Tour start = initial_tour(InitialTourKind::random, ps, seed);
    RunTrace trace = run_two_opt(start, ps, PivotRule::first);
    auto pairs = extract_disjoint_pairs(trace);
    CHECK(pairs.size() <= trace.moves.size() / 2);
    // Disjointness is positional: identical exchanges can recur in a trace
    // once other moves recreate their edges, so compare multiplicities.
    std::map<std::array<int, 4>, int> budget;
    for (const TwoChange& m : trace.moves) ++budget[{m.a, m.z1, m.b, m.z2}];
    for (const LinkedPair& pair : pairs) {
      auto check = classify_pair(pair.first, pair.second);
      REQUIRE(check.has_value());
      CHECK(check->kind == pair.kind);
      for (const TwoChange* m : {&pair.first, &pair.second}) {
        int& left = budget[{m->a, m->z1, m->b, m->z2}];
        CHECK(left > 0);
        --left;
      }
    }
  }
}

TEST_CASE("pair census json") {
  PointSet ps = random_points(6, 2, 77);
  auto doc = nlohmann::json::parse(pair_census_json(ps));
  CHECK(doc["schema"] == 1);
  CHECK(doc["n"] == 6);
  CHECK(doc["counts"]["type0"] ==
        count_linked_pairs(ps, LinkedKind::type0));
  CHECK(doc["counts"]["type1a"] ==
        count_linked_pairs(ps, LinkedKind::type1a));
  CHECK(doc["counts"]["type1b"] ==
        count_linked_pairs(ps, LinkedKind::type1b));
  auto best = min_linked_improvement(ps, LinkedKind::type0);
  REQUIRE(best.has_value());
  CHECK(doc["min_linked"]["type0"]["delta_sum"].get<double>() ==
        doctest::Approx(best->delta_sum).epsilon(1e-12));
  CHECK(doc["min_linked"]["type0"]["first"].size() == 4);
}

}  // TEST_SUITE
