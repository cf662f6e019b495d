#include "memlab/matching.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace memlab::matching {

Matching Matching::empty(int left_count, int right_count) {
  Matching m;
  m.left_to_right.assign(static_cast<std::size_t>(left_count), kUnmatched);
  m.right_to_left.assign(static_cast<std::size_t>(right_count), kUnmatched);
  return m;
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

class HopcroftKarp {
 public:
  HopcroftKarp(const BipartiteGraph& g, Matching& m) : g_(g), m_(m) {
    dist_.resize(static_cast<std::size_t>(g.left_count));
    next_edge_.resize(static_cast<std::size_t>(g.left_count));
  }

  void run() {
    while (bfs()) {
      std::fill(next_edge_.begin(), next_edge_.end(), 0);
      for (int l = 0; l < g_.left_count; ++l) {
        if (m_.left_to_right[static_cast<std::size_t>(l)] == kUnmatched && dfs(l)) ++m_.size;
      }
    }
  }

 private:
  // Layers the free left vertices at distance 0; true if some free right
  // vertex is reachable by an alternating path.
  bool bfs() {
    std::queue<int> q;
    for (int l = 0; l < g_.left_count; ++l) {
      if (m_.left_to_right[static_cast<std::size_t>(l)] == kUnmatched) {
        dist_[static_cast<std::size_t>(l)] = 0;
        q.push(l);
      } else {
        dist_[static_cast<std::size_t>(l)] = kInf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      const int l = q.front();
      q.pop();
      for (int r : g_.adj[static_cast<std::size_t>(l)]) {
        const int back = m_.right_to_left[static_cast<std::size_t>(r)];
        if (back == kUnmatched) {
          found = true;
        } else if (dist_[static_cast<std::size_t>(back)] == kInf) {
          dist_[static_cast<std::size_t>(back)] = dist_[static_cast<std::size_t>(l)] + 1;
          q.push(back);
        }
      }
    }
    return found;
  }

  // Recursion depth is bounded by the BFS layer count, at most V.
  bool dfs(int l) {
    const auto& nbrs = g_.adj[static_cast<std::size_t>(l)];
    for (int& k = next_edge_[static_cast<std::size_t>(l)]; k < static_cast<int>(nbrs.size()); ++k) {
      const int r = nbrs[static_cast<std::size_t>(k)];
      const int back = m_.right_to_left[static_cast<std::size_t>(r)];
      if (back == kUnmatched ||
          (dist_[static_cast<std::size_t>(back)] == dist_[static_cast<std::size_t>(l)] + 1 && dfs(back))) {
        m_.left_to_right[static_cast<std::size_t>(l)] = r;
        m_.right_to_left[static_cast<std::size_t>(r)] = l;
        ++k;
        return true;
      }
    }
    dist_[static_cast<std::size_t>(l)] = kInf;
    return false;
  }

  const BipartiteGraph& g_;
  Matching& m_;
  std::vector<int> dist_;
  std::vector<int> next_edge_;
};

}  // namespace

Matching hopcroft_karp(const BipartiteGraph& g, Matching initial) {
  if (static_cast<int>(initial.left_to_right.size()) != g.left_count ||
      static_cast<int>(initial.right_to_left.size()) != g.right_count) {
    throw std::invalid_argument("initial matching does not fit the graph");
  }
  HopcroftKarp(g, initial).run();
  return initial;
}

Matching hopcroft_karp(const BipartiteGraph& g) {
  return hopcroft_karp(g, Matching::empty(g.left_count, g.right_count));
}

std::vector<int> strongly_connected_components(const std::vector<std::vector<int>>& digraph,
                                               int* component_count) {
  const int v_count = static_cast<int>(digraph.size());
  std::vector<int> index(static_cast<std::size_t>(v_count), -1);
  std::vector<int> low(static_cast<std::size_t>(v_count), 0);
  std::vector<int> comp(static_cast<std::size_t>(v_count), -1);
  std::vector<char> on_stack(static_cast<std::size_t>(v_count), 0);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;  // vertex, next edge
  int next_index = 0;
  int comps = 0;

  for (int root = 0; root < v_count; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, edge] = call.back();
      const auto vs = static_cast<std::size_t>(v);
      if (edge == 0 && index[vs] == -1) {
        index[vs] = low[vs] = next_index++;
        stack.push_back(v);
        on_stack[vs] = 1;
      }
      if (edge < digraph[vs].size()) {
        const int w = digraph[vs][edge++];
        const auto ws = static_cast<std::size_t>(w);
        if (index[ws] == -1) {
          call.push_back({w, 0});
        } else if (on_stack[ws]) {
          low[vs] = std::min(low[vs], index[ws]);
        }
        continue;
      }
      if (low[vs] == index[vs]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          comp[static_cast<std::size_t>(w)] = comps;
        } while (w != v);
        ++comps;
      }
      const int finished = v;
      call.pop_back();
      if (!call.empty()) {
        const auto parent = static_cast<std::size_t>(call.back().first);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
      }
    }
  }
  if (component_count) *component_count = comps;
  return comp;
}

}  // namespace memlab::matching
