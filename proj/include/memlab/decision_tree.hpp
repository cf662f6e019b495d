#pragma once

// R-way decision trees with outputs on edges, and the exact computations run
// over them: the law of the number of equal pairs seen along the path of a
// uniform valid deck, and the fraction of decks on which a shallow tree emits
// at least 2t correct outputs.

#include "memlab/game.hpp"
#include "memlab/rng.hpp"
#include "memlab/strategies.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace memlab {

inline constexpr std::uint64_t kDefaultTreeCap = 1'000'000;

class MalformedTree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TreeEdge {
  int child = -1;  // -1 on the last level
  std::vector<MatchTriple> outputs;
};

struct TreeNode {
  int position = 0;              // queried position in [1, 2n]
  std::vector<TreeEdge> edges;   // edges[v-1] is followed when x_position = v
};

class DecisionTree {
 public:
  // nodes[0] is the root; the depth-0 tree has no nodes. Throws
  // MalformedTree unless: every node has R edges; all leaves sit at exactly
  // `depth`; no position is queried twice and no output repeats along a
  // path; every output (i, j, v) has 1 <= i < j <= 2n and v in [R]; each
  // node has a single parent and is reachable from the root.
  DecisionTree(int n, int R, int depth, std::vector<TreeNode> nodes);

  int n() const { return n_; }
  int R() const { return R_; }
  int depth() const { return depth_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }

 private:
  void validate() const;

  int n_;
  int R_;
  int depth_;
  std::vector<TreeNode> nodes_;
};

struct PathStats {
  std::vector<int> queried;
  std::vector<int> observed;
  std::vector<MatchTriple> outputs;
  int equal_pairs = 0;      // pairs of equal values among `observed`
  int correct_outputs = 0;  // outputs that are matches of the deck
};

PathStats tree_run(const DecisionTree& tree, const ValidInput& x);

// Number of valid decks (n pairs, values in [R]) agreeing with every
// (position, value) in `fixed`; 0 when the constraints conflict.
BigInt count_completions(int n, int R, std::span<const std::pair<int, int>> fixed);

// Law of equal_pairs over a uniform valid deck, by enumerating every deck.
// Index u holds Pr[X = u], u = 0..floor(depth/2). Throws CapExceeded.
std::vector<Rational> x_exact_distribution(const DecisionTree& tree,
                                           std::uint64_t cap = kDefaultEnumerationCap);

// Same law, computed by weighting each root-to-leaf path with the number of
// decks that follow it. No enumeration, so it scales to large |X|.
std::vector<Rational> x_distribution_by_paths(const DecisionTree& tree);

// Enumerated X law equals y_exact_distribution(n, depth) exactly.
bool xy_equiv_check(const DecisionTree& tree, std::uint64_t cap = kDefaultEnumerationCap);

// (n - r - t)^(-t) + e^(-t).
double lemma43_bound(int n, int r, int t);

struct Lemma43Result {
  Rational fraction;  // Pr[tree emits >= 2t correct outputs]
  double bound = 0.0;
  bool ok = false;
};

// Exact fraction of valid decks on which the tree emits at least 2t correct
// outputs, by path weighting and inclusion-exclusion over each path's
// outputs. Requires depth <= floor(n/2), 1 <= t <= floor(depth/2), R >= n.
Lemma43Result lemma43_check(const DecisionTree& tree, int t);

// The same fraction by running the tree on every valid deck.
Rational lemma43_fraction_enumerated(const DecisionTree& tree, int t,
                                     std::uint64_t cap = kDefaultEnumerationCap);

// Unfolds the first `depth` reads of a blind player into a tree. Re-reads of
// a position already read on the path are collapsed (their outputs go onto
// the incoming edge); paths shorter than `depth` are padded by reading the
// lowest unqueried position, with no outputs. Throws CapExceeded when the
// tree would need more than cap_tree internal nodes.
DecisionTree compile_prefix_tree(const BlindPlayer& player, int n, int R, int depth,
                                 std::uint64_t cap_tree = kDefaultTreeCap);

// Adaptive tree querying uniformly random unqueried positions. Each edge
// carries an output with probability output_rate: the pair just completed
// on the path when there is one, otherwise an arbitrary claim.
DecisionTree random_tree(int n, int R, int depth, Rng& rng, double output_rate = 0.3);

// Reads positions 1..depth, outputs every pair completed along the way, and
// on the last edge adds t+1 guesses: up to `one_sided` pair a read singleton
// with an unread position, the rest claim two unread positions share an
// unseen value.
DecisionTree guessing_tree(int n, int R, int depth, int t, int one_sided);

}  // namespace memlab
