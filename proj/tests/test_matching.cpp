#include "memlab/matching.hpp"
#include "memlab/rng.hpp"

#include <doctest.h>

#include <functional>

using namespace memlab;
using namespace memlab::matching;

namespace {

int brute_max_matching(const BipartiteGraph& g) {
  std::vector<bool> used(static_cast<std::size_t>(g.right_count), false);
  std::function<int(int)> go = [&](int l) -> int {
    if (l == g.left_count) return 0;
    int best = go(l + 1);
    for (int r : g.adj[static_cast<std::size_t>(l)]) {
      if (used[static_cast<std::size_t>(r)]) continue;
      used[static_cast<std::size_t>(r)] = true;
      best = std::max(best, 1 + go(l + 1));
      used[static_cast<std::size_t>(r)] = false;
    }
    return best;
  };
  return go(0);
}

BipartiteGraph random_graph(int l, int r, double p, Rng& rng) {
  BipartiteGraph g{l, r, std::vector<std::vector<int>>(static_cast<std::size_t>(l))};
  for (int a = 0; a < l; ++a) {
    for (int b = 0; b < r; ++b) {
      if (uniform01(rng) < p) g.adj[static_cast<std::size_t>(a)].push_back(b);
    }
  }
  return g;
}

void check_valid(const BipartiteGraph& g, const Matching& m) {
  int size = 0;
  for (int l = 0; l < g.left_count; ++l) {
    const int r = m.left_to_right[static_cast<std::size_t>(l)];
    if (r == kUnmatched) continue;
    ++size;
    const auto& nb = g.adj[static_cast<std::size_t>(l)];
    CHECK(std::find(nb.begin(), nb.end(), r) != nb.end());
    CHECK(m.right_to_left[static_cast<std::size_t>(r)] == l);
  }
  CHECK(size == m.size);
}

}  // namespace

TEST_CASE("Hopcroft-Karp finds a maximum matching") {
  Rng rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const int l = 1 + static_cast<int>(uniform_below(rng, 7));
    const int r = 1 + static_cast<int>(uniform_below(rng, 7));
    const auto g = random_graph(l, r, 0.15 + 0.1 * (trial % 7), rng);
    const auto m = hopcroft_karp(g);
    check_valid(g, m);
    CHECK(m.size == brute_max_matching(g));
  }
}

TEST_CASE("warm start keeps the result maximum") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_graph(6, 6, 0.4, rng);
    auto partial = Matching::empty(6, 6);
    // Greedy partial matching as the seed.
    for (int l = 0; l < 6; ++l) {
      for (int r : g.adj[static_cast<std::size_t>(l)]) {
        if (partial.right_to_left[static_cast<std::size_t>(r)] == kUnmatched) {
          partial.left_to_right[static_cast<std::size_t>(l)] = r;
          partial.right_to_left[static_cast<std::size_t>(r)] = l;
          ++partial.size;
          break;
        }
      }
    }
    const auto m = hopcroft_karp(g, partial);
    check_valid(g, m);
    CHECK(m.size == brute_max_matching(g));
  }
}

TEST_CASE("SCC ids agree with mutual reachability") {
  Rng rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(uniform_below(rng, 12));
    std::vector<std::vector<int>> dg(static_cast<std::size_t>(n));
    std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a) {
      reach[a][a] = true;
      for (int b = 0; b < n; ++b) {
        if (a != b && uniform01(rng) < 0.2) {
          dg[static_cast<std::size_t>(a)].push_back(b);
          reach[a][b] = true;
        }
      }
    }
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (reach[a][k] && reach[k][b]) reach[a][b] = true;
    int count = 0;
    const auto comp = strongly_connected_components(dg, &count);
    for (int a = 0; a < n; ++a) {
      CHECK(comp[static_cast<std::size_t>(a)] >= 0);
      CHECK(comp[static_cast<std::size_t>(a)] < count);
      for (int b = 0; b < n; ++b) {
        CHECK((comp[static_cast<std::size_t>(a)] == comp[static_cast<std::size_t>(b)]) == (reach[a][b] && reach[b][a]));
      }
    }
  }
}

TEST_CASE("SCC on a long path does not recurse") {
  const int n = 200000;
  std::vector<std::vector<int>> dg(static_cast<std::size_t>(n));
  for (int k = 0; k + 1 < n; ++k) dg[static_cast<std::size_t>(k)].push_back(k + 1);
  dg[static_cast<std::size_t>(n - 1)].push_back(0);
  int count = 0;
  strongly_connected_components(dg, &count);
  CHECK(count == 1);
}
