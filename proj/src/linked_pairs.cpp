#include <algorithm>
#include <array>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "smoothed2opt/linked_pairs.hpp"

namespace smoothed2opt {

std::string to_string(LinkedKind kind) {
  switch (kind) {
    case LinkedKind::type0: return "type0";
    case LinkedKind::type1a: return "type1a";
    case LinkedKind::type1b: return "type1b";
  }
  throw std::logic_error("unknown linked kind");
}

LinkedKind linked_kind_from_string(const std::string& name) {
  if (name == "type0") return LinkedKind::type0;
  if (name == "type1a") return LinkedKind::type1a;
  if (name == "type1b") return LinkedKind::type1b;
  throw std::invalid_argument("unknown linked kind: " + name);
}

namespace {

Edge edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

std::array<Edge, 2> removed_edges(const TwoChange& m) {
  return {edge(m.a, m.z1), edge(m.b, m.z2)};
}

std::array<Edge, 2> added_edges(const TwoChange& m) {
  return {edge(m.a, m.z2), edge(m.b, m.z1)};
}

void require_structural(const TwoChange& m) {
  int idx[4] = {m.a, m.z1, m.b, m.z2};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (idx[i] == idx[j])
        throw std::invalid_argument("2-change repeats a vertex");
}

bool contains(const std::array<Edge, 2>& edges, const Edge& e) {
  return edges[0] == e || edges[1] == e;
}

// Edges removed by one move and added by the other; the pair is linked
// exactly when this is nonempty.
std::vector<Edge> linking_edges(const TwoChange& m1, const TwoChange& m2) {
  std::vector<Edge> out;
  auto r1 = removed_edges(m1), a1 = added_edges(m1);
  auto r2 = removed_edges(m2), a2 = added_edges(m2);
  for (const Edge& e : r1)
    if (contains(a2, e)) out.push_back(e);
  for (const Edge& e : r2)
    if (contains(a1, e) &&
        std::find(out.begin(), out.end(), e) == out.end())
      out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<LinkedPair> classify_pair(const TwoChange& m1,
                                        const TwoChange& m2) {
  require_structural(m1);
  require_structural(m2);

  if (linking_edges(m1, m2).empty()) return std::nullopt;

  std::set<int> vertices = {m1.a, m1.z1, m1.b, m1.z2,
                            m2.a, m2.z1, m2.b, m2.z2};
  int count = static_cast<int>(vertices.size());
  if (count != 5 && count != 6) return std::nullopt;

  std::vector<Edge> shared;
  auto r1 = removed_edges(m1), a1 = added_edges(m1);
  auto r2 = removed_edges(m2), a2 = added_edges(m2);
  for (const Edge& e : {r1[0], r1[1], a1[0], a1[1]})
    if (contains(r2, e) || contains(a2, e)) shared.push_back(e);
  std::sort(shared.begin(), shared.end());
  shared.erase(std::unique(shared.begin(), shared.end()), shared.end());

  LinkedPair pair;
  pair.first = m1;
  pair.second = m2;
  pair.shared_edges = std::move(shared);
  pair.vertex_count = count;
  if (count == 6) {
    pair.kind = LinkedKind::type0;
  } else {
    pair.kind = pair.shared_edges.size() == 1 ? LinkedKind::type1a
                                              : LinkedKind::type1b;
  }
  return pair;
}

void enumerate_linked_pairs(
    const PointSet& ps, LinkedKind kind,
    const std::function<bool(const LinkedPair&)>& visit) {
  const int n = ps.n;

  // Offer a candidate (remover of e, adder of e); returns false to abort
  // the whole enumeration.
  auto offer = [&](const Edge& e, const TwoChange& remover,
                   const TwoChange& adder) -> bool {
    auto pair = classify_pair(remover, adder);
    if (!pair || pair->kind != kind) return true;
    if (kind == LinkedKind::type1b) {
      // Both shared edges of a 1b pair link the moves; emit at the
      // smaller one so each pair appears once.
      if (e != linking_edges(remover, adder).front()) return true;
    }
    return visit(*pair);
  };

  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const Edge e{u, v};
      for (int p = 0; p < n; ++p) {
        if (p == u || p == v) continue;
        for (int q = p + 1; q < n; ++q) {
          if (q == u || q == v) continue;
          // The two reconnections of removing {u,v} and {p,q}.
          const TwoChange removers[2] = {make_two_change(ps, u, v, p, q),
                                         make_two_change(ps, u, v, q, p)};
          if (kind == LinkedKind::type0) {
            for (int s = 0; s < n; ++s) {
              if (s == u || s == v || s == p || s == q) continue;
              for (int t = s + 1; t < n; ++t) {
                if (t == u || t == v || t == p || t == q) continue;
                // The two exchanges adding {u,v} and {s,t}.
                const TwoChange adders[2] = {make_two_change(ps, u, t, s, v),
                                             make_two_change(ps, u, s, t, v)};
                for (const TwoChange& mr : removers)
                  for (const TwoChange& ma : adders)
                    if (!offer(e, mr, ma)) return;
              }
            }
          } else {
            // Five vertices: the adder's second edge {w, r} reuses one
            // vertex w of {p,q}.
            for (int w : {p, q}) {
              for (int r = 0; r < n; ++r) {
                if (r == u || r == v || r == p || r == q) continue;
                int s = std::min(w, r), t = std::max(w, r);
                const TwoChange adders[2] = {make_two_change(ps, u, t, s, v),
                                             make_two_change(ps, u, s, t, v)};
                for (const TwoChange& mr : removers)
                  for (const TwoChange& ma : adders)
                    if (!offer(e, mr, ma)) return;
              }
            }
          }
        }
      }
    }
  }
}

std::uint64_t count_linked_pairs(const PointSet& ps, LinkedKind kind) {
  std::uint64_t count = 0;
  enumerate_linked_pairs(ps, kind, [&](const LinkedPair&) {
    ++count;
    return true;
  });
  return count;
}

std::optional<MinLinkedImprovement> min_linked_improvement(const PointSet& ps,
                                                           LinkedKind kind) {
  std::optional<MinLinkedImprovement> best;
  enumerate_linked_pairs(ps, kind, [&](const LinkedPair& pair) {
    if (pair.first.delta > 0.0 && pair.second.delta > 0.0) {
      double sum = pair.first.delta + pair.second.delta;
      if (!best || sum < best->delta_sum) best = MinLinkedImprovement{sum, pair};
    }
    return true;
  });
  return best;
}

std::vector<LinkedPair> extract_disjoint_pairs(const RunTrace& trace) {
  const std::vector<TwoChange>& moves = trace.moves;
  std::vector<LinkedPair> out;
  std::vector<char> matched(moves.size(), 0);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (matched[i]) continue;
    for (std::size_t j = i + 1; j < moves.size(); ++j) {
      if (matched[j]) continue;
      auto pair = classify_pair(moves[i], moves[j]);
      if (pair) {
        matched[i] = matched[j] = 1;
        out.push_back(std::move(*pair));
        break;
      }
    }
  }
  return out;
}

std::string pair_census_json(const PointSet& ps) {
  nlohmann::json j;
  j["schema"] = 1;
  j["n"] = ps.n;
  j["d"] = ps.d;
  auto move_tuple = [](const TwoChange& m) {
    return nlohmann::json::array({m.a, m.z1, m.b, m.z2});
  };
  for (LinkedKind kind :
       {LinkedKind::type0, LinkedKind::type1a, LinkedKind::type1b}) {
    const std::string name = to_string(kind);
    j["counts"][name] = count_linked_pairs(ps, kind);
    auto best = min_linked_improvement(ps, kind);
    if (best) {
      j["min_linked"][name] = {
          {"delta_sum", best->delta_sum},
          {"first", move_tuple(best->pair.first)},
          {"second", move_tuple(best->pair.second)},
      };
    } else {
      j["min_linked"][name] = nullptr;
    }
  }
  return j.dump(2);
}

}  // namespace smoothed2opt
