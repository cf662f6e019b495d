#include "memlab/decision_tree.hpp"

#include "memlab/ytail.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <set>

namespace memlab {

namespace {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt c = 1;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

int count_equal_pairs(std::span<const int> values) {
  std::map<int, int> count;
  for (int v : values) ++count[v];
  int pairs = 0;
  for (auto [v, c] : count) pairs += c / 2;
  return pairs;
}

}  // namespace

DecisionTree::DecisionTree(int n, int R, int depth, std::vector<TreeNode> nodes)
    : n_(n), R_(R), depth_(depth), nodes_(std::move(nodes)) {
  validate();
}

void DecisionTree::validate() const {
  if (n_ < 1 || R_ < 1) throw MalformedTree("tree needs n >= 1 and R >= 1");
  if (depth_ < 0 || depth_ > 2 * n_) throw MalformedTree("tree depth must lie in [0, 2n]");
  if (depth_ == 0) {
    if (!nodes_.empty()) throw MalformedTree("depth-0 tree must not have nodes");
    return;
  }
  if (nodes_.empty()) throw MalformedTree("tree of positive depth needs a root");

  std::vector<int> parents(nodes_.size(), 0);
  std::vector<int> path_positions;
  std::vector<MatchTriple> path_outputs;

  auto visit = [&](auto&& self, int index, int level) -> void {
    const TreeNode& node = nodes_[static_cast<std::size_t>(index)];
    if (node.position < 1 || node.position > 2 * n_) {
      throw MalformedTree("node " + std::to_string(index) + " queries position " +
                          std::to_string(node.position) + " outside [1, 2n]");
    }
    if (std::find(path_positions.begin(), path_positions.end(), node.position) != path_positions.end()) {
      throw MalformedTree("position " + std::to_string(node.position) + " re-queried on a path");
    }
    if (static_cast<int>(node.edges.size()) != R_) {
      throw MalformedTree("node " + std::to_string(index) + " has " + std::to_string(node.edges.size()) +
                          " edges, expected R=" + std::to_string(R_));
    }
    path_positions.push_back(node.position);
    for (const TreeEdge& edge : node.edges) {
      const auto mark = path_outputs.size();
      for (const MatchTriple& m : edge.outputs) {
        if (m.i < 1 || m.i >= m.j || m.j > 2 * n_ || m.v < 1 || m.v > R_) {
          throw MalformedTree("ill-formed output " + to_string(m));
        }
        if (std::find(path_outputs.begin(), path_outputs.end(), m) != path_outputs.end()) {
          throw MalformedTree("output " + to_string(m) + " repeated on a path");
        }
        path_outputs.push_back(m);
      }
      if (level + 1 == depth_) {
        if (edge.child != -1) throw MalformedTree("path longer than the tree depth");
      } else {
        if (edge.child < 0 || edge.child >= static_cast<int>(nodes_.size())) {
          throw MalformedTree("path shorter than the tree depth");
        }
        if (edge.child == 0 || parents[static_cast<std::size_t>(edge.child)]++ != 0) {
          throw MalformedTree("node " + std::to_string(edge.child) + " has more than one parent");
        }
        self(self, edge.child, level + 1);
      }
      path_outputs.resize(mark);
    }
    path_positions.pop_back();
  };
  visit(visit, 0, 0);
  for (std::size_t k = 1; k < nodes_.size(); ++k) {
    if (parents[k] != 1) throw MalformedTree("node " + std::to_string(k) + " is unreachable");
  }
}

PathStats tree_run(const DecisionTree& tree, const ValidInput& x) {
  if (x.n() != tree.n()) throw std::invalid_argument("deck size does not match the tree");
  if (x.max_value() > tree.R()) throw std::invalid_argument("deck uses values above the tree's R");
  PathStats stats;
  int index = tree.depth() == 0 ? -1 : 0;
  while (index >= 0) {
    const TreeNode& node = tree.nodes()[static_cast<std::size_t>(index)];
    const int v = x.at(node.position);
    stats.queried.push_back(node.position);
    stats.observed.push_back(v);
    const TreeEdge& edge = node.edges[static_cast<std::size_t>(v - 1)];
    stats.outputs.insert(stats.outputs.end(), edge.outputs.begin(), edge.outputs.end());
    index = edge.child;
  }
  stats.equal_pairs = count_equal_pairs(stats.observed);
  const auto matches = matches_of(x);
  for (const MatchTriple& m : stats.outputs) {
    if (std::binary_search(matches.begin(), matches.end(), m)) ++stats.correct_outputs;
  }
  return stats;
}

BigInt count_completions(int n, int R, std::span<const std::pair<int, int>> fixed) {
  std::map<int, int> value_at;
  for (auto [pos, v] : fixed) {
    if (pos < 1 || pos > 2 * n || v < 1 || v > R) return 0;
    auto [it, fresh] = value_at.emplace(pos, v);
    if (!fresh && it->second != v) return 0;
  }
  std::map<int, int> uses;
  for (auto [pos, v] : value_at) ++uses[v];
  int singles = 0;
  for (auto [v, c] : uses) {
    if (c > 2) return 0;
    if (c == 1) ++singles;
  }
  const int distinct = static_cast<int>(uses.size());
  if (distinct > n || R < n) return 0;
  const int free = 2 * n - static_cast<int>(value_at.size());
  const int fresh_pairs = n - distinct;
  // Place the partners of the singles, then choose and arrange fresh pairs.
  BigInt ways = 1;
  for (int k = 0; k < singles; ++k) ways *= free - k;
  ways *= binomial(R - distinct, fresh_pairs);
  for (int k = 2; k <= 2 * fresh_pairs; ++k) ways *= k;
  ways >>= fresh_pairs;
  return ways;
}

namespace {

// Calls leaf(fixed, outputs, equal_pairs) for every root-to-leaf path that
// some valid deck can follow.
void walk_paths(const DecisionTree& tree,
                const std::function<void(const std::vector<std::pair<int, int>>&,
                                         const std::vector<MatchTriple>&, int)>& leaf) {
  std::vector<std::pair<int, int>> fixed;
  std::vector<MatchTriple> outputs;
  std::vector<int> uses(static_cast<std::size_t>(tree.R()) + 1, 0);
  int distinct = 0;
  int pairs = 0;
  if (tree.depth() == 0) {
    leaf(fixed, outputs, 0);
    return;
  }
  auto visit = [&](auto&& self, int index) -> void {
    const TreeNode& node = tree.nodes()[static_cast<std::size_t>(index)];
    for (int v = 1; v <= tree.R(); ++v) {
      int& c = uses[static_cast<std::size_t>(v)];
      if (c == 2 || (c == 0 && distinct == tree.n())) continue;  // no valid deck goes here
      if (c == 0) ++distinct;
      if (c == 1) ++pairs;
      ++c;
      fixed.emplace_back(node.position, v);
      const TreeEdge& edge = node.edges[static_cast<std::size_t>(v - 1)];
      const auto mark = outputs.size();
      outputs.insert(outputs.end(), edge.outputs.begin(), edge.outputs.end());
      if (edge.child < 0) {
        leaf(fixed, outputs, pairs);
      } else {
        self(self, edge.child);
      }
      outputs.resize(mark);
      fixed.pop_back();
      --c;
      if (c == 1) --pairs;
      if (c == 0) --distinct;
    }
  };
  visit(visit, 0);
}

void check_lemma43_params(const DecisionTree& tree, int t) {
  const int r = tree.depth();
  if (r > tree.n() / 2) throw std::invalid_argument("tree depth must be at most floor(n/2)");
  if (t < 1 || t > r / 2) throw std::invalid_argument("t must lie in [1, floor(r/2)]");
  if (tree.R() < tree.n()) throw std::invalid_argument("R must be at least n");
}

}  // namespace

std::vector<Rational> x_exact_distribution(const DecisionTree& tree, std::uint64_t cap) {
  std::vector<BigInt> counts(static_cast<std::size_t>(tree.depth() / 2) + 1, 0);
  BigInt total = 0;
  for_each_valid_input(tree.n(), tree.R(), cap, [&](const ValidInput& x) {
    ++counts[static_cast<std::size_t>(tree_run(tree, x).equal_pairs)];
    ++total;
  });
  std::vector<Rational> dist;
  for (const auto& c : counts) dist.emplace_back(c, total);
  return dist;
}

std::vector<Rational> x_distribution_by_paths(const DecisionTree& tree) {
  std::vector<BigInt> counts(static_cast<std::size_t>(tree.depth() / 2) + 1, 0);
  walk_paths(tree, [&](const auto& fixed, const auto&, int pairs) {
    counts[static_cast<std::size_t>(pairs)] += count_completions(tree.n(), tree.R(), fixed);
  });
  const BigInt total = count_valid_inputs(tree.n(), tree.R());
  std::vector<Rational> dist;
  for (const auto& c : counts) dist.emplace_back(c, total);
  return dist;
}

bool xy_equiv_check(const DecisionTree& tree, std::uint64_t cap) {
  return x_exact_distribution(tree, cap) == y_exact_distribution(tree.n(), tree.depth());
}

double lemma43_bound(int n, int r, int t) {
  const double base = static_cast<double>(n - r - t);
  if (base <= 0) throw std::invalid_argument("lemma bound needs n - r - t > 0");
  return std::pow(base, -t) + std::exp(-static_cast<double>(t));
}

Lemma43Result lemma43_check(const DecisionTree& tree, int t) {
  check_lemma43_params(tree, t);
  const int need = 2 * t;
  BigInt productive = 0;
  std::vector<std::pair<int, int>> constraints;

  walk_paths(tree, [&](const auto& fixed, const std::vector<MatchTriple>& outs, int) {
    const int m = static_cast<int>(outs.size());
    if (m < need) return;
    if (m > 24) throw std::invalid_argument("too many outputs on one path for inclusion-exclusion");
    // sums[k] = sum over k-subsets K of the decks on this path where every
    // output in K is correct.
    std::vector<BigInt> sums(static_cast<std::size_t>(m) + 1, 0);
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      constraints.assign(fixed.begin(), fixed.end());
      for (int k = 0; k < m; ++k) {
        if (mask & (1u << k)) {
          constraints.emplace_back(outs[static_cast<std::size_t>(k)].i, outs[static_cast<std::size_t>(k)].v);
          constraints.emplace_back(outs[static_cast<std::size_t>(k)].j, outs[static_cast<std::size_t>(k)].v);
        }
      }
      sums[static_cast<std::size_t>(std::popcount(mask))] += count_completions(tree.n(), tree.R(), constraints);
    }
    // Decks with exactly j correct outputs, by inclusion-exclusion.
    for (int j = need; j <= m; ++j) {
      BigInt exactly = 0;
      for (int k = j; k <= m; ++k) {
        BigInt term = binomial(k, j) * sums[static_cast<std::size_t>(k)];
        if ((k - j) % 2) exactly -= term; else exactly += term;
      }
      productive += exactly;
    }
  });

  Lemma43Result result;
  result.fraction = Rational(productive, count_valid_inputs(tree.n(), tree.R()));
  result.bound = lemma43_bound(tree.n(), tree.depth(), t);
  result.ok = result.fraction.convert_to<double>() <= result.bound;
  return result;
}

Rational lemma43_fraction_enumerated(const DecisionTree& tree, int t, std::uint64_t cap) {
  check_lemma43_params(tree, t);
  BigInt productive = 0;
  BigInt total = 0;
  for_each_valid_input(tree.n(), tree.R(), cap, [&](const ValidInput& x) {
    if (tree_run(tree, x).correct_outputs >= 2 * t) ++productive;
    ++total;
  });
  return Rational(productive, total);
}

// ---------------------------------------------------------------------------

namespace {

class PrefixCompiler {
 public:
  PrefixCompiler(int n, int R, int depth) : n_(n), R_(R), depth_(depth) {
    value_of_.assign(2 * static_cast<std::size_t>(n) + 1, 0);
  }

  std::vector<TreeNode> run(const BlindPlayer& player) {
    if (depth_ == 0) return {};
    auto root = player.clone();
    const auto first = root->next_position();
    build(std::move(root), first, depth_, 0);
    return std::move(nodes_);
  }

 private:
  int lowest_unqueried() const {
    for (int p = 1; p <= 2 * n_; ++p) {
      if (value_of_[static_cast<std::size_t>(p)] == 0) return p;
    }
    throw std::logic_error("no unqueried position left");
  }

  void feed(BlindPlayer& player, int pos, std::vector<MatchTriple>& outputs) {
    std::vector<std::uint8_t> bits;
    for (int j : player.working_set()) {
      const int vj = value_of_[static_cast<std::size_t>(j)];
      if (vj == 0) throw std::logic_error("working set holds a position that was never read");
      bits.push_back(vj == value_of_[static_cast<std::size_t>(pos)] ? 1 : 0);
    }
    for (auto [a, b] : player.examine(pos, bits)) {
      const int i = std::min(a, b);
      const int j = std::max(a, b);
      int v = value_of_[static_cast<std::size_t>(i)];
      if (v == 0) v = value_of_[static_cast<std::size_t>(j)];
      if (v == 0) throw std::logic_error("blind output names two unread positions");
      outputs.push_back({i, j, v});
    }
  }

  // `fresh` is the position the player asked for next (already obtained from
  // next_position), or nullopt once the player is done or out of reads.
  int build(std::unique_ptr<BlindPlayer> player, std::optional<int> fresh, int reads_left, int level) {
    const bool player_read = fresh.has_value() && reads_left > 0;
    const int pos = player_read ? *fresh : lowest_unqueried();
    const int index = static_cast<int>(nodes_.size());
    nodes_.push_back({pos, std::vector<TreeEdge>(static_cast<std::size_t>(R_))});

    for (int v = 1; v <= R_; ++v) {
      value_of_[static_cast<std::size_t>(pos)] = v;
      TreeEdge edge;
      std::unique_ptr<BlindPlayer> next_player;
      std::optional<int> next_fresh;
      int left = reads_left;
      if (player_read) {
        next_player = player->clone();
        feed(*next_player, pos, edge.outputs);
        --left;
        // Collapse re-reads of known positions onto this edge.
        while (left > 0) {
          const auto q = next_player->next_position();
          if (!q) break;
          if (value_of_[static_cast<std::size_t>(*q)] != 0) {
            feed(*next_player, *q, edge.outputs);
            --left;
            continue;
          }
          next_fresh = q;
          break;
        }
      }
      if (level + 1 < depth_) edge.child = build(std::move(next_player), next_fresh, left, level + 1);
      nodes_[static_cast<std::size_t>(index)].edges[static_cast<std::size_t>(v - 1)] = std::move(edge);
    }
    value_of_[static_cast<std::size_t>(pos)] = 0;
    return index;
  }

  int n_;
  int R_;
  int depth_;
  std::vector<int> value_of_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

DecisionTree compile_prefix_tree(const BlindPlayer& player, int n, int R, int depth,
                                 std::uint64_t cap_tree) {
  if (depth < 0 || depth > 2 * n) throw std::invalid_argument("depth must lie in [0, 2n]");
  BigInt internal = 0;
  BigInt level = 1;
  for (int k = 0; k < depth; ++k) {
    internal += level;
    level *= R;
  }
  if (internal > cap_tree) {
    throw CapExceeded("prefix tree of depth " + std::to_string(depth) + " over R=" + std::to_string(R) +
                          " needs " + internal.str() + " internal nodes, above the cap of " +
                          std::to_string(cap_tree),
                      internal);
  }
  PrefixCompiler compiler(n, R, depth);
  return DecisionTree(n, R, depth, compiler.run(player));
}

DecisionTree random_tree(int n, int R, int depth, Rng& rng, double output_rate) {
  if (depth < 0 || depth > 2 * n) throw std::invalid_argument("depth must lie in [0, 2n]");
  std::vector<TreeNode> nodes;
  std::vector<int> queried;
  std::vector<int> observed;
  std::vector<MatchTriple> path_outputs;

  auto fresh_claim = [&](int pos, int v) -> std::optional<MatchTriple> {
    // Prefer the pair completed by this read.
    for (std::size_t k = 0; k + 1 < queried.size(); ++k) {
      if (observed[k] == v) {
        MatchTriple m{std::min(queried[k], pos), std::max(queried[k], pos), v};
        if (std::find(path_outputs.begin(), path_outputs.end(), m) == path_outputs.end()) return m;
      }
    }
    const int a = 1 + static_cast<int>(uniform_below(rng, 2 * static_cast<std::uint64_t>(n)));
    int b = 1 + static_cast<int>(uniform_below(rng, 2 * static_cast<std::uint64_t>(n) - 1));
    if (b >= a) ++b;
    MatchTriple m{std::min(a, b), std::max(a, b), 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(R)))};
    if (std::find(path_outputs.begin(), path_outputs.end(), m) != path_outputs.end()) return std::nullopt;
    return m;
  };

  auto build = [&](auto&& self, int level) -> int {
    std::vector<int> candidates;
    for (int p = 1; p <= 2 * n; ++p) {
      if (std::find(queried.begin(), queried.end(), p) == queried.end()) candidates.push_back(p);
    }
    const int pos = candidates[static_cast<std::size_t>(uniform_below(rng, candidates.size()))];
    const int index = static_cast<int>(nodes.size());
    nodes.push_back({pos, std::vector<TreeEdge>(static_cast<std::size_t>(R))});
    queried.push_back(pos);
    for (int v = 1; v <= R; ++v) {
      observed.push_back(v);
      TreeEdge edge;
      if (uniform01(rng) < output_rate) {
        if (auto m = fresh_claim(pos, v)) edge.outputs.push_back(*m);
      }
      path_outputs.insert(path_outputs.end(), edge.outputs.begin(), edge.outputs.end());
      if (level + 1 < depth) edge.child = self(self, level + 1);
      path_outputs.resize(path_outputs.size() - edge.outputs.size());
      nodes[static_cast<std::size_t>(index)].edges[static_cast<std::size_t>(v - 1)] = std::move(edge);
      observed.pop_back();
    }
    queried.pop_back();
    return index;
  };
  if (depth > 0) build(build, 0);
  return DecisionTree(n, R, depth, std::move(nodes));
}

DecisionTree guessing_tree(int n, int R, int depth, int t, int one_sided) {
  if (depth < 1 || depth > 2 * n) throw std::invalid_argument("guessing tree depth must lie in [1, 2n]");
  if (t < 0 || one_sided < 0) throw std::invalid_argument("t and one_sided must be non-negative");
  std::vector<TreeNode> nodes;
  std::vector<int> observed;  // observed[k] = value at position k+1

  auto last_edge_guesses = [&](std::vector<MatchTriple>& outs) {
    std::map<int, std::vector<int>> where;
    for (std::size_t k = 0; k < observed.size(); ++k) where[observed[k]].push_back(static_cast<int>(k) + 1);
    std::vector<int> singles;
    for (const auto& [v, ps] : where) {
      if (ps.size() == 1) singles.push_back(ps.front());
    }
    std::sort(singles.begin(), singles.end());
    int next_free = depth + 1;  // positions depth+1..2n are unread
    std::set<int> used_values(observed.begin(), observed.end());
    int made = 0;
    for (int b : singles) {
      if (made == t + 1 || made == one_sided || next_free > 2 * n) break;
      outs.push_back({b, next_free++, observed[static_cast<std::size_t>(b - 1)]});
      ++made;
    }
    int fresh_value = 1;
    while (made < t + 1 && next_free + 1 <= 2 * n) {
      while (fresh_value <= R && used_values.count(fresh_value)) ++fresh_value;
      if (fresh_value > R) break;
      used_values.insert(fresh_value);
      outs.push_back({next_free, next_free + 1, fresh_value});
      next_free += 2;
      ++made;
    }
  };

  auto build = [&](auto&& self, int level) -> int {
    const int pos = level + 1;
    const int index = static_cast<int>(nodes.size());
    nodes.push_back({pos, std::vector<TreeEdge>(static_cast<std::size_t>(R))});
    for (int v = 1; v <= R; ++v) {
      TreeEdge edge;
      // Output the pair this read completes, if its partner is still open.
      int earlier = 0;
      int seen = 0;
      for (std::size_t k = 0; k < observed.size(); ++k) {
        if (observed[k] == v) {
          ++seen;
          earlier = static_cast<int>(k) + 1;
        }
      }
      if (seen == 1) edge.outputs.push_back({earlier, pos, v});
      observed.push_back(v);
      if (level + 1 < depth) {
        edge.child = self(self, level + 1);
      } else {
        last_edge_guesses(edge.outputs);
      }
      observed.pop_back();
      nodes[static_cast<std::size_t>(index)].edges[static_cast<std::size_t>(v - 1)] = std::move(edge);
    }
    return index;
  };
  build(build, 0);
  return DecisionTree(n, R, depth, std::move(nodes));
}

}  // namespace memlab
