#include "memlab/decision_tree.hpp"
#include "memlab/ytail.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace memlab;

namespace {

// Reads the given positions in order whatever it sees; no outputs.
DecisionTree fixed_tree(int n, int R, const std::vector<int>& positions) {
  std::vector<TreeNode> nodes;
  const int depth = static_cast<int>(positions.size());
  auto build = [&](auto&& self, int level) -> int {
    const int index = static_cast<int>(nodes.size());
    nodes.push_back({positions[static_cast<std::size_t>(level)], std::vector<TreeEdge>(static_cast<std::size_t>(R))});
    for (int v = 0; v < R; ++v) {
      if (level + 1 < depth) {
        const int child = self(self, level + 1);
        nodes[static_cast<std::size_t>(index)].edges[static_cast<std::size_t>(v)].child = child;
      }
    }
    return index;
  };
  if (depth > 0) build(build, 0);
  return DecisionTree(n, R, depth, std::move(nodes));
}

int recount_correct(const ValidInput& x, const std::vector<MatchTriple>& outs) {
  int c = 0;
  for (const auto& m : outs) c += (x.at(m.i) == m.v && x.at(m.j) == m.v) ? 1 : 0;
  return c;
}

}  // namespace

TEST_CASE("tree_run basics") {
  const DecisionTree empty(1, 1, 0, {});
  const auto s0 = tree_run(empty, ValidInput({1, 1}));
  CHECK(s0.queried.empty());
  CHECK(s0.outputs.empty());
  CHECK(s0.equal_pairs == 0);

  const auto t12 = fixed_tree(1, 1, {1, 2});
  CHECK(tree_run(t12, ValidInput({1, 1})).equal_pairs == 1);
  const auto t12b = fixed_tree(2, 2, {1, 2});
  CHECK(tree_run(t12b, ValidInput({1, 2, 2, 1})).equal_pairs == 0);
  CHECK(tree_run(t12b, ValidInput({2, 2, 1, 1})).equal_pairs == 1);
  CHECK_THROWS_AS(tree_run(t12b, ValidInput({3, 3, 1, 1})), std::invalid_argument);
}

TEST_CASE("malformed trees are rejected at construction") {
  auto t = fixed_tree(2, 2, {1, 2});
  auto nodes = t.nodes();
  SUBCASE("re-query") {
    nodes[1].position = 1;
    CHECK_THROWS_AS(DecisionTree(2, 2, 2, nodes), MalformedTree);
  }
  SUBCASE("wrong fan-out") {
    nodes[0].edges.pop_back();
    CHECK_THROWS_AS(DecisionTree(2, 2, 2, nodes), MalformedTree);
  }
  SUBCASE("short path") {
    nodes[0].edges[1].child = -1;
    CHECK_THROWS_AS(DecisionTree(2, 2, 2, nodes), MalformedTree);
  }
  SUBCASE("shared child") {
    nodes[0].edges[1].child = nodes[0].edges[0].child;
    CHECK_THROWS_AS(DecisionTree(2, 2, 2, nodes), MalformedTree);
  }
  SUBCASE("repeated output") {
    nodes[0].edges[0].outputs.push_back({1, 2, 1});
    nodes[1].edges[0].outputs.push_back({1, 2, 1});
    CHECK_THROWS_AS(DecisionTree(2, 2, 2, nodes), MalformedTree);
  }
  SUBCASE("bad output") {
    nodes[0].edges[0].outputs.push_back({2, 1, 1});
    CHECK_THROWS_AS(DecisionTree(2, 2, 2, nodes), MalformedTree);
  }
  CHECK_THROWS_AS(DecisionTree(2, 2, 1, {}), MalformedTree);
}

TEST_CASE("completion counts agree with brute force") {
  Rng rng(12);
  for (int n = 1; n <= 3; ++n) {
    for (int R = n; R <= n + 2; ++R) {
      std::vector<std::vector<int>> decks;
      oracle::for_each_deck_brute(n, R, [&](const std::vector<int>& xs) { decks.push_back(xs); });
      CHECK(count_completions(n, R, {}) == BigInt(decks.size()));
      for (int trial = 0; trial < 60; ++trial) {
        std::vector<std::pair<int, int>> fixed;
        const int k = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(2 * n + 2)));
        for (int c = 0; c < k; ++c) {
          fixed.emplace_back(1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(2 * n))),
                             1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(R))));
        }
        std::int64_t agree = 0;
        for (const auto& xs : decks) {
          bool ok = true;
          for (auto [p, v] : fixed) ok = ok && xs[static_cast<std::size_t>(p - 1)] == v;
          agree += ok ? 1 : 0;
        }
        CHECK(count_completions(n, R, fixed) == agree);
      }
    }
  }
}

TEST_CASE("X has the law of Y") {
  const auto t = fixed_tree(2, 2, {3, 1});
  CHECK(x_exact_distribution(t)[1] == Rational(1, 3));
  CHECK(xy_equiv_check(t));
  CHECK(x_exact_distribution(DecisionTree(2, 2, 0, {})) == std::vector<Rational>{1});

  Rng rng(31);
  for (int n = 1; n <= 3; ++n) {
    for (int R = n; R <= n + 2; ++R) {
      for (int depth = 0; depth <= 2 * n; ++depth) {
        for (int k = 0; k < 4; ++k) {
          const auto tree = random_tree(n, R, depth, rng);
          const auto x = x_exact_distribution(tree);
          CHECK(x == y_exact_distribution(n, depth));
          CHECK(x == x_distribution_by_paths(tree));
        }
      }
    }
  }
}

TEST_CASE("compiled prefix follows the live player") {
  SUBCASE("everything stored reads 1 then 2") {
    const auto t = compile_prefix_tree(MultiPassPlayer(3, 6), 3, 3, 2);
    CHECK(t.nodes()[0].position == 1);
    for (const auto& e : t.nodes()[0].edges) CHECK(t.nodes()[static_cast<std::size_t>(e.child)].position == 2);
  }
  SUBCASE("depth 0") {
    const auto t = compile_prefix_tree(MultiPassPlayer(3, 1), 3, 3, 0);
    CHECK(t.nodes().empty());
  }
  SUBCASE("replay against decks") {
    Rng rng(41);
    for (int s : {1, 2, 3}) {
      for (int depth : {3, 5}) {
        const int n = 3;
        const auto tree = compile_prefix_tree(MultiPassPlayer(n, s), n, 4, depth);
        for (int k = 0; k < 100; ++k) {
          const auto x = generate_valid_input(n, 4, rng);
          MultiPassPlayer live(n, s);
          const auto r = play_on_deck(live, x, depth);
          std::vector<int> distinct;
          for (const auto& e : r.transcript.events()) {
            if (e.kind == EventKind::Flip &&
                std::find(distinct.begin(), distinct.end(), e.arg1) == distinct.end()) {
              distinct.push_back(e.arg1);
            }
          }
          const auto stats = tree_run(tree, x);
          REQUIRE(stats.queried.size() == static_cast<std::size_t>(depth));
          CHECK(std::equal(distinct.begin(), distinct.end(), stats.queried.begin()));
          // Padding reads the lowest unread positions.
          std::set<int> seen(distinct.begin(), distinct.end());
          for (std::size_t q = distinct.size(); q < stats.queried.size(); ++q) {
            int lowest = 1;
            while (seen.count(lowest)) ++lowest;
            CHECK(stats.queried[q] == lowest);
            seen.insert(lowest);
          }
          CHECK(stats.outputs == r.transcript.outputs());
          CHECK(stats.correct_outputs == recount_correct(x, stats.outputs));
        }
      }
    }
  }
  SUBCASE("size cap") {
    try {
      compile_prefix_tree(MultiPassPlayer(8, 2), 8, 8, 8, 1000);
      FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
      CHECK(e.count() > 1000);
    }
  }
}

TEST_CASE("productivity fraction: path weighting equals enumeration") {
  Rng rng(77);
  struct Case {
    int n, R;
  };
  for (const auto [n, R] : {Case{4, 4}, Case{4, 6}, Case{5, 5}}) {
    const int depth = n / 2;
    std::vector<DecisionTree> trees;
    for (int k = 0; k <= 2; ++k) trees.push_back(guessing_tree(n, R, depth, 1, k));
    for (int k = 0; k < 3; ++k) trees.push_back(random_tree(n, R, depth, rng, 0.9));
    trees.push_back(compile_prefix_tree(MultiPassPlayer(n, 1), n, R, depth));
    for (const auto& tree : trees) {
      const auto res = lemma43_check(tree, 1);
      CHECK(res.fraction == lemma43_fraction_enumerated(tree, 1));
      CHECK(res.bound == doctest::Approx(lemma43_bound(n, depth, 1)));
    }
  }
}

TEST_CASE("productivity bound and parameter checks") {
  const auto quiet = fixed_tree(8, 8, {1, 2, 3, 4});
  const auto r = lemma43_check(quiet, 2);
  CHECK(r.fraction == 0);
  CHECK(r.ok);
  CHECK(lemma43_bound(8, 4, 2) == doctest::Approx(0.25 + std::exp(-2.0)));
  CHECK_THROWS_AS(lemma43_check(quiet, 3), std::invalid_argument);
  CHECK_THROWS_AS(lemma43_check(fixed_tree(6, 6, {1, 2, 3, 4}), 1), std::invalid_argument);
  CHECK_THROWS_AS(lemma43_check(fixed_tree(8, 7, {1, 2, 3, 4}), 1), std::invalid_argument);

  for (int k = 0; k <= 3; ++k) {
    const auto g = guessing_tree(8, 8, 4, 2, k);
    const auto res = lemma43_check(g, 2);
    CHECK(res.ok);
    CHECK(res.fraction > 0);
  }
}

TEST_CASE("guessing tree outputs every completed pair") {
  const auto g = guessing_tree(4, 4, 4, 1, 1);
  const ValidInput x({1, 1, 2, 2, 3, 3, 4, 4});
  const auto s = tree_run(g, x);
  CHECK(std::count(s.outputs.begin(), s.outputs.end(), MatchTriple{1, 2, 1}) == 1);
  CHECK(std::count(s.outputs.begin(), s.outputs.end(), MatchTriple{3, 4, 2}) == 1);
  CHECK(s.correct_outputs == recount_correct(x, s.outputs));
}
