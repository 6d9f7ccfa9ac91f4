#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smoothed2opt/tour_engine.hpp"

namespace smoothed2opt {

// Undirected edge, normalized to first < second.
using Edge = std::pair<int, int>;

// Two 2-changes are linked when an edge removed by one is added by the
// other. type0: six distinct vertices. type1a: five vertices, one shared
// edge. type1b: five vertices, two shared edges.
enum class LinkedKind { type0, type1a, type1b };

std::string to_string(LinkedKind kind);
LinkedKind linked_kind_from_string(const std::string& name);

struct LinkedPair {
  TwoChange first;
  TwoChange second;
  LinkedKind kind = LinkedKind::type0;
  std::vector<Edge> shared_edges;  // 1 or 2 entries
  int vertex_count = 0;            // 5 or 6
};

// nullopt when the moves are not linked or use only four vertices (such
// pairs fall outside the taxonomy). Symmetric in its arguments. Throws if
// either move repeats a vertex.
std::optional<LinkedPair> classify_pair(const TwoChange& m1,
                                        const TwoChange& m2);

// Streams every linked pair of the requested kind exactly once, built
// around the linking edge (the remover and adder of that edge are chosen
// independently). type1b pairs carry two linking edges and are emitted at
// the lexicographically smaller one. The visitor returns false to stop.
// Too-small n yields an empty stream.
void enumerate_linked_pairs(const PointSet& ps, LinkedKind kind,
                            const std::function<bool(const LinkedPair&)>& visit);

std::uint64_t count_linked_pairs(const PointSet& ps, LinkedKind kind);

struct MinLinkedImprovement {
  double delta_sum = 0.0;  // first.delta + second.delta of the witness
  LinkedPair pair;
};

// Minimum of delta1 + delta2 over pairs of the kind whose constituent
// moves both improve strictly; nullopt when no such pair exists.
std::optional<MinLinkedImprovement> min_linked_improvement(const PointSet& ps,
                                                           LinkedKind kind);

// Greedy left-to-right matching over the executed moves: each unmatched
// move is linked to the earliest later unmatched move forming a pair of
// any kind. No move appears twice in the result.
std::vector<LinkedPair> extract_disjoint_pairs(const RunTrace& trace);

// Counts per kind, minimum linked improvement per kind and witnessing
// index tuples, as a JSON document.
std::string pair_census_json(const PointSet& ps);

}  // namespace smoothed2opt
