#pragma once

// The "No unless forced" adversary for pairwise equality queries.
//
// Positions 1..n form the left side and n+1..2n the right side of the
// knowledge graph, which starts as K_{n,n}. A "No" to a present, non-isolated
// edge deletes it; every edge that then lies in no perfect matching vanishes.
// The graph therefore always consists of useful edges only, and the game is
// decided once it is a perfect matching.

#include "memlab/game.hpp"
#include "memlab/matching.hpp"
#include "memlab/strategies.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace memlab {

struct Edge {
  int left = 0;   // in [1, n]
  int right = 0;  // in [n+1, 2n]

  auto operator<=>(const Edge&) const = default;
};

std::string to_string(const Edge& e);

enum class EdgeStatus { Present, Deleted, Vanished };

struct AnswerResult {
  bool answer = false;
  std::optional<Edge> deleted;
  std::vector<Edge> vanished;
};

// Raised when the graph has no perfect matching; legal play never gets here.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class KnowledgeGraph {
 public:
  explicit KnowledgeGraph(int n);

  // Graph on the given edges; every other left-right pair counts as deleted.
  // No closure is run.
  static KnowledgeGraph from_edges(int n, const std::vector<Edge>& edges);

  int n() const { return n_; }

  // nullopt for pairs that can never be edges (same side, out of range, i == j).
  std::optional<Edge> edge_between(int i, int j) const;

  bool has_edge(int i, int j) const;
  bool has_edge(const Edge& e) const { return status(e) == EdgeStatus::Present; }
  EdgeStatus status(const Edge& e) const;
  int degree(int position) const;
  bool is_isolated(int i, int j) const;
  int edge_count() const { return edge_count_; }
  std::vector<Edge> edges() const;

  // Every vertex has degree exactly one.
  bool is_done() const;

  // Answers "is x_i = x_j?". Present isolated edge: Yes, no change. Present
  // non-isolated edge: No, the edge is deleted and the closure runs. Anything
  // else: No, no change. Throws std::invalid_argument for i == j or positions
  // outside [1, 2n].
  AnswerResult answer(int i, int j);

  // Removes every present edge that lies in no perfect matching and returns
  // them. Uses one maximum matching plus the SCCs of the oriented graph
  // (matching edges right->left, others left->right): a non-matching edge is
  // useful iff its endpoints share a component.
  std::vector<Edge> vanish_closure();

  // The perfect matching maintained alongside the graph.
  std::vector<Edge> perfect_matching();

  // A perfect matching avoiding `e`, or nullopt if every one contains it.
  std::optional<std::vector<Edge>> perfect_matching_avoiding(const Edge& e) const;

 private:
  std::size_t slot(const Edge& e) const {
    return static_cast<std::size_t>(e.left - 1) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(e.right - n_ - 1);
  }
  matching::BipartiteGraph bipartite(std::optional<Edge> without = std::nullopt) const;
  void repair_matching();
  void remove(const Edge& e, EdgeStatus why);

  int n_;
  int edge_count_;
  std::vector<EdgeStatus> status_;
  std::vector<int> degree_;  // indexed by position
  matching::Matching matching_;
};

// Valid deck consistent with a finished graph: the pair containing left
// vertex i gets value i. Throws std::invalid_argument unless g.is_done() and
// R >= n.
ValidInput realize_input(const KnowledgeGraph& g, int R);

struct QueryRecord {
  int i = 0;
  int j = 0;
  bool answer = false;
  std::optional<Edge> deleted;
  std::vector<Edge> vanished;
};

struct AdversaryLog {
  std::vector<QueryRecord> queries;
  std::int64_t deletions = 0;
  std::int64_t vanishings = 0;

  void record(int i, int j, const AnswerResult& r);
};

// Replays every logged answer against x; true iff all agree.
bool replay_consistent(const AdversaryLog& log, const ValidInput& x);

struct InvolutionReport {
  int n = 0;
  bool involution_ok = false;     // phi is a fixed-point-free involution off M
  bool claim_ok = false;          // every phi-pair has a deleted member
  bool accounting_ok = false;     // deletions + vanishings == n(n-1)
  bool lower_bound_ok = false;    // deletions >= n(n-1)/2
  std::int64_t pairs = 0;
  std::int64_t deletions = 0;
  std::int64_t vanishings = 0;
  std::vector<std::pair<Edge, Edge>> violations;

  bool ok() const { return involution_ok && claim_ok && accounting_ok && lower_bound_ok; }
};

// Audits the pairing argument: renumbers so the final matching is
// {i, n+i}, pairs every other edge e = {i, n+j} with phi(e) = {j, n+i}, and
// checks that each pair has a deleted (not vanished) member. Throws
// std::invalid_argument if `final_matching` is not a perfect matching or some
// edge outside it was never removed.
InvolutionReport involution_audit(int n, const AdversaryLog& log,
                                  const std::vector<Edge>& final_matching);

struct AdversaryRun {
  Transcript transcript;
  AdversaryLog log;
  KnowledgeGraph graph{1};
  bool correct = false;
  std::string failure;
  std::optional<ValidInput> realized;           // when correct
  std::optional<ValidInput> counterexample;     // when incorrect
};

// Called after every answer that changed the graph.
using ClosureObserver = std::function<void(const KnowledgeGraph&)>;

// Drives a blind player against the adversary until it has output n
// matches, stops, or declares a pair that is not forced.
AdversaryRun adversarial_play(BlindPlayer& player, int n, const ClosureObserver& observer = {});

}  // namespace memlab
