#pragma once

#include <vector>

namespace memlab::matching {

inline constexpr int kUnmatched = -1;

// Bipartite graph with left vertices 0..left_count-1 and right vertices
// 0..right_count-1; adj[l] lists the right neighbours of l.
struct BipartiteGraph {
  int left_count = 0;
  int right_count = 0;
  std::vector<std::vector<int>> adj;
};

struct Matching {
  std::vector<int> left_to_right;
  std::vector<int> right_to_left;
  int size = 0;

  static Matching empty(int left_count, int right_count);
};

// Hopcroft-Karp, O(E sqrt(V)). Starts from `initial` (which must be a valid
// matching in g); pass Matching::empty for a cold start.
Matching hopcroft_karp(const BipartiteGraph& g, Matching initial);
Matching hopcroft_karp(const BipartiteGraph& g);

// Tarjan's algorithm, iterative. Returns the component id of each vertex;
// ids are dense in [0, component_count).
std::vector<int> strongly_connected_components(const std::vector<std::vector<int>>& digraph,
                                               int* component_count = nullptr);

}  // namespace memlab::matching
