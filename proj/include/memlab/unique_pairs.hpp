#pragma once

// The easy problem used to contrast with the matching game: given 2n values
// in [n], output every pair of positions whose common value occurs nowhere
// else.

#include "memlab/game.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace memlab {

// Pairs (i, j), i < j, 1-based, sorted. Throws std::invalid_argument if the
// length is not 2n or an entry lies outside [1, n].
std::vector<std::pair<int, int>> unique_pairs(std::span<const int> xs, int n);

// C(n,2) (1/n) (1-1/n)^(2n-2), the expression as usually written.
double unique_pairs_binom_n_formula(int n);

// C(2n,2) (1/n) (1-1/n)^(2n-2): one term per pair of the 2n positions.
double unique_pairs_binom_2n_formula(int n);

// (n-1) / (2 e^2).
double unique_pairs_lower_bound(int n);

// Exact E[#outputs] for uniform xs in [n]^(2n), by enumerating all n^(2n)
// inputs. Throws CapExceeded above `cap`.
Rational unique_pairs_exact_expectation(int n, std::uint64_t cap = kDefaultEnumerationCap);

struct UniquePairsEstimate {
  int n = 0;
  std::int64_t trials = 0;
  double estimate = 0.0;
  double std_error = 0.0;  // sample standard error of the mean
  double binom_n = 0.0;
  double binom_2n = 0.0;
  double bound = 0.0;
  std::optional<Rational> exact;
  bool ok = false;  // estimate + 3 stderr > bound
};

// Monte Carlo over `trials` uniform inputs; trial k draws from
// Rng(split_seed(seed, k)). The exact value is filled in when n^(2n) <= cap.
UniquePairsEstimate unique_pairs_expected(int n, std::int64_t trials, std::uint64_t seed, int jobs = 1,
                                          std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace memlab
