#include "memlab/adversary.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace memlab {

using matching::kUnmatched;

std::string to_string(const Edge& e) {
  return "{" + std::to_string(e.left) + "," + std::to_string(e.right) + "}";
}

KnowledgeGraph::KnowledgeGraph(int n)
    : n_(n),
      edge_count_(n * n),
      status_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), EdgeStatus::Present),
      degree_(2 * static_cast<std::size_t>(n) + 1, n),
      matching_(matching::Matching::empty(n, n)) {
  if (n < 1) throw std::invalid_argument("knowledge graph needs n >= 1");
  degree_[0] = 0;
  for (int k = 0; k < n; ++k) {
    matching_.left_to_right[static_cast<std::size_t>(k)] = k;
    matching_.right_to_left[static_cast<std::size_t>(k)] = k;
  }
  matching_.size = n;
}

KnowledgeGraph KnowledgeGraph::from_edges(int n, const std::vector<Edge>& edges) {
  KnowledgeGraph g(n);
  std::fill(g.status_.begin(), g.status_.end(), EdgeStatus::Deleted);
  std::fill(g.degree_.begin() + 1, g.degree_.end(), 0);
  g.edge_count_ = 0;
  for (const Edge& e : edges) {
    if (!g.edge_between(e.left, e.right) || e.left > n) {
      throw std::invalid_argument("edge " + to_string(e) + " is not a left-right pair");
    }
    auto& s = g.status_[g.slot(e)];
    if (s == EdgeStatus::Present) continue;
    s = EdgeStatus::Present;
    ++g.degree_[static_cast<std::size_t>(e.left)];
    ++g.degree_[static_cast<std::size_t>(e.right)];
    ++g.edge_count_;
  }
  g.matching_ = matching::hopcroft_karp(g.bipartite());
  return g;
}

std::optional<Edge> KnowledgeGraph::edge_between(int i, int j) const {
  if (i < 1 || j < 1 || i > 2 * n_ || j > 2 * n_ || i == j) return std::nullopt;
  const int lo = std::min(i, j);
  const int hi = std::max(i, j);
  if (lo > n_ || hi <= n_) return std::nullopt;
  return Edge{lo, hi};
}

EdgeStatus KnowledgeGraph::status(const Edge& e) const {
  if (!edge_between(e.left, e.right) || e.left > n_) {
    throw std::invalid_argument("edge " + to_string(e) + " is not a left-right pair");
  }
  return status_[slot(e)];
}

bool KnowledgeGraph::has_edge(int i, int j) const {
  auto e = edge_between(i, j);
  return e && status_[slot(*e)] == EdgeStatus::Present;
}

int KnowledgeGraph::degree(int position) const {
  if (position < 1 || position > 2 * n_) throw std::out_of_range("position outside [1, 2n]");
  return degree_[static_cast<std::size_t>(position)];
}

bool KnowledgeGraph::is_isolated(int i, int j) const {
  return has_edge(i, j) && degree(i) == 1 && degree(j) == 1;
}

std::vector<Edge> KnowledgeGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(edge_count_));
  for (int l = 1; l <= n_; ++l) {
    for (int r = n_ + 1; r <= 2 * n_; ++r) {
      if (status_[slot({l, r})] == EdgeStatus::Present) out.push_back({l, r});
    }
  }
  return out;
}

bool KnowledgeGraph::is_done() const {
  for (int p = 1; p <= 2 * n_; ++p) {
    if (degree_[static_cast<std::size_t>(p)] != 1) return false;
  }
  return true;
}

matching::BipartiteGraph KnowledgeGraph::bipartite(std::optional<Edge> without) const {
  matching::BipartiteGraph g{n_, n_, std::vector<std::vector<int>>(static_cast<std::size_t>(n_))};
  for (int l = 1; l <= n_; ++l) {
    for (int r = n_ + 1; r <= 2 * n_; ++r) {
      const Edge e{l, r};
      if (status_[slot(e)] != EdgeStatus::Present || (without && *without == e)) continue;
      g.adj[static_cast<std::size_t>(l - 1)].push_back(r - n_ - 1);
    }
  }
  return g;
}

void KnowledgeGraph::repair_matching() {
  if (matching_.size == n_) return;
  matching_ = matching::hopcroft_karp(bipartite(), std::move(matching_));
}

void KnowledgeGraph::remove(const Edge& e, EdgeStatus why) {
  auto& s = status_[slot(e)];
  if (s != EdgeStatus::Present) throw std::logic_error("edge " + to_string(e) + " already removed");
  s = why;
  --degree_[static_cast<std::size_t>(e.left)];
  --degree_[static_cast<std::size_t>(e.right)];
  --edge_count_;
  const auto l = static_cast<std::size_t>(e.left - 1);
  const auto r = static_cast<std::size_t>(e.right - n_ - 1);
  if (matching_.left_to_right[l] == static_cast<int>(r)) {
    matching_.left_to_right[l] = kUnmatched;
    matching_.right_to_left[r] = kUnmatched;
    --matching_.size;
  }
}

AnswerResult KnowledgeGraph::answer(int i, int j) {
  if (i == j) throw std::invalid_argument("query needs two distinct positions");
  if (i < 1 || j < 1 || i > 2 * n_ || j > 2 * n_) {
    throw std::invalid_argument("query position outside [1, 2n]");
  }
  AnswerResult r;
  const auto e = edge_between(i, j);
  if (!e || status_[slot(*e)] != EdgeStatus::Present) return r;
  if (is_isolated(i, j)) {
    r.answer = true;
    return r;
  }
  remove(*e, EdgeStatus::Deleted);
  r.deleted = *e;
  r.vanished = vanish_closure();
  return r;
}

std::vector<Edge> KnowledgeGraph::vanish_closure() {
  repair_matching();
  if (matching_.size != n_) {
    throw InvariantViolation("knowledge graph has no perfect matching (maximum matching size " +
                             std::to_string(matching_.size) + " < " + std::to_string(n_) + ")");
  }
  // Vertex ids: left l -> l-1, right r -> r-1 (so right side is n..2n-1).
  std::vector<std::vector<int>> digraph(2 * static_cast<std::size_t>(n_));
  for (int l = 1; l <= n_; ++l) {
    for (int r = n_ + 1; r <= 2 * n_; ++r) {
      if (status_[slot({l, r})] != EdgeStatus::Present) continue;
      if (matching_.left_to_right[static_cast<std::size_t>(l - 1)] == r - n_ - 1) {
        digraph[static_cast<std::size_t>(r - 1)].push_back(l - 1);
      } else {
        digraph[static_cast<std::size_t>(l - 1)].push_back(r - 1);
      }
    }
  }
  const auto comp = matching::strongly_connected_components(digraph);
  std::vector<Edge> useless;
  for (int l = 1; l <= n_; ++l) {
    for (int r = n_ + 1; r <= 2 * n_; ++r) {
      if (status_[slot({l, r})] != EdgeStatus::Present) continue;
      if (matching_.left_to_right[static_cast<std::size_t>(l - 1)] == r - n_ - 1) continue;
      if (comp[static_cast<std::size_t>(l - 1)] != comp[static_cast<std::size_t>(r - 1)]) {
        useless.push_back({l, r});
      }
    }
  }
  for (const Edge& e : useless) remove(e, EdgeStatus::Vanished);
  return useless;
}

std::vector<Edge> KnowledgeGraph::perfect_matching() {
  repair_matching();
  if (matching_.size != n_) throw InvariantViolation("knowledge graph has no perfect matching");
  std::vector<Edge> out;
  for (int l = 0; l < n_; ++l) {
    out.push_back({l + 1, matching_.left_to_right[static_cast<std::size_t>(l)] + n_ + 1});
  }
  return out;
}

std::optional<std::vector<Edge>> KnowledgeGraph::perfect_matching_avoiding(const Edge& e) const {
  const auto m = matching::hopcroft_karp(bipartite(e));
  if (m.size != n_) return std::nullopt;
  std::vector<Edge> out;
  for (int l = 0; l < n_; ++l) {
    out.push_back({l + 1, m.left_to_right[static_cast<std::size_t>(l)] + n_ + 1});
  }
  return out;
}

namespace {

ValidInput deck_from_matching(int n, const std::vector<Edge>& m) {
  std::vector<int> values(2 * static_cast<std::size_t>(n), 0);
  for (const Edge& e : m) {
    values[static_cast<std::size_t>(e.left - 1)] = e.left;
    values[static_cast<std::size_t>(e.right - 1)] = e.left;
  }
  return ValidInput(std::move(values));
}

}  // namespace

ValidInput realize_input(const KnowledgeGraph& g, int R) {
  if (!g.is_done()) throw std::invalid_argument("realize_input: the graph is not yet a perfect matching");
  if (R < g.n()) throw std::invalid_argument("realize_input: R must be at least n");
  return deck_from_matching(g.n(), g.edges());
}

void AdversaryLog::record(int i, int j, const AnswerResult& r) {
  queries.push_back({i, j, r.answer, r.deleted, r.vanished});
  if (r.deleted) ++deletions;
  vanishings += static_cast<std::int64_t>(r.vanished.size());
}

bool replay_consistent(const AdversaryLog& log, const ValidInput& x) {
  return std::all_of(log.queries.begin(), log.queries.end(), [&](const QueryRecord& q) {
    return (x.at(q.i) == x.at(q.j)) == q.answer;
  });
}

InvolutionReport involution_audit(int n, const AdversaryLog& log,
                                  const std::vector<Edge>& final_matching) {
  if (static_cast<int>(final_matching.size()) != n) {
    throw std::invalid_argument("involution audit needs a finished run (perfect matching of size n)");
  }
  // partner_of_left[i] = j means {i, n+j} is in M (both 1-based, j in [1, n]).
  std::vector<int> partner_of_left(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> left_of_partner(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : final_matching) {
    const int j = e.right - n;
    if (e.left < 1 || e.left > n || j < 1 || j > n || partner_of_left[static_cast<std::size_t>(e.left)] ||
        left_of_partner[static_cast<std::size_t>(j)]) {
      throw std::invalid_argument("final matching is not a perfect matching");
    }
    partner_of_left[static_cast<std::size_t>(e.left)] = j;
    left_of_partner[static_cast<std::size_t>(j)] = e.left;
  }

  std::map<Edge, EdgeStatus> removed;
  for (const auto& q : log.queries) {
    if (q.deleted) removed[*q.deleted] = EdgeStatus::Deleted;
    for (const Edge& e : q.vanished) removed[e] = EdgeStatus::Vanished;
  }

  // Renumbering: right vertex n+partner_of_left[i] becomes n+i. In renumbered
  // coordinates phi({a, n+b}) = {b, n+a}; map back through the partner table.
  auto to_renumbered = [&](const Edge& e) { return std::pair{e.left, left_of_partner[static_cast<std::size_t>(e.right - n)]}; };
  auto from_renumbered = [&](int a, int b) { return Edge{a, n + partner_of_left[static_cast<std::size_t>(b)]}; };
  auto phi = [&](const Edge& e) {
    auto [a, b] = to_renumbered(e);
    return from_renumbered(b, a);
  };
  auto in_matching = [&](const Edge& e) { return partner_of_left[static_cast<std::size_t>(e.left)] == e.right - n; };

  InvolutionReport rep;
  rep.n = n;
  rep.deletions = log.deletions;
  rep.vanishings = log.vanishings;
  rep.involution_ok = true;
  rep.claim_ok = true;
  for (int l = 1; l <= n; ++l) {
    for (int r = n + 1; r <= 2 * n; ++r) {
      const Edge e{l, r};
      if (in_matching(e)) continue;
      if (!removed.count(e)) {
        throw std::invalid_argument("edge " + to_string(e) + " outside the final matching was never removed");
      }
      const Edge f = phi(e);
      if (f == e || in_matching(f) || phi(f) != e) rep.involution_ok = false;
      if (e < f) {
        ++rep.pairs;
        const auto se = removed.count(e) ? removed.at(e) : EdgeStatus::Present;
        const auto sf = removed.count(f) ? removed.at(f) : EdgeStatus::Present;
        if (se != EdgeStatus::Deleted && sf != EdgeStatus::Deleted) {
          rep.claim_ok = false;
          rep.violations.push_back({e, f});
        }
      }
    }
  }
  const std::int64_t nn = static_cast<std::int64_t>(n) * (n - 1);
  rep.accounting_ok = rep.deletions + rep.vanishings == nn;
  rep.lower_bound_ok = 2 * rep.deletions >= nn;
  return rep;
}

AdversaryRun adversarial_play(BlindPlayer& player, int n, const ClosureObserver& observer) {
  AdversaryRun run;
  run.graph = KnowledgeGraph(n);
  auto& g = run.graph;
  std::optional<Edge> bad_claim;
  bool claim_rejected = false;

  DriveHooks hooks;
  hooks.equal = [&](int i, int j) {
    const auto r = g.answer(i, j);
    run.log.record(i, j, r);
    if (r.deleted) run.transcript.add_deletion(r.deleted->left, r.deleted->right);
    for (const Edge& e : r.vanished) run.transcript.add_vanish(e.left, e.right);
    if (r.deleted && observer) observer(g);
    return r.answer;
  };
  hooks.output_value = [&](int i, int j) -> std::optional<int> {
    if (g.is_isolated(i, j)) return g.edge_between(i, j)->left;
    claim_rejected = true;
    bad_claim = g.edge_between(i, j);
    return std::nullopt;
  };

  const auto result = drive_blind(player, n, hooks, run.transcript);

  if (result.status == DriveStatus::Finished) {
    // n disjoint isolated edges cover every vertex.
    run.realized = realize_input(g, n);
    run.correct = replay_consistent(run.log, *run.realized);
    if (!run.correct) run.failure = "realized deck contradicts a logged answer";
    return run;
  }

  std::vector<Edge> witness;
  if (claim_rejected) {
    const auto [i, j] = *result.rejected;
    run.failure = "declared (" + std::to_string(i) + "," + std::to_string(j) +
                  ") although the answers so far do not force it";
    if (bad_claim && g.has_edge(*bad_claim)) {
      auto avoiding = g.perfect_matching_avoiding(*bad_claim);
      if (!avoiding) throw InvariantViolation("non-isolated edge lies in every perfect matching");
      witness = std::move(*avoiding);
    } else {
      witness = g.perfect_matching();
    }
  } else {
    run.failure = "stopped after " + std::to_string(result.outputs) + " of " + std::to_string(n) +
                  " matches";
    witness = g.perfect_matching();
  }
  run.counterexample = deck_from_matching(n, witness);
  return run;
}

}  // namespace memlab
