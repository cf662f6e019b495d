#pragma once

// Y = number of completed pairs when r of the 2n tokens in [n] x {0,1} are
// drawn without replacement, its exact law, and the Chernoff-style bounds
// used to control its upper tail.

#include "memlab/game.hpp"
#include "memlab/rng.hpp"

#include <cstdint>
#include <vector>

namespace memlab {

struct YExperiment {
  int n = 1;
  int r = 0;
  int t = 1;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

// Reusable sampler; keeps a scratch permutation so a draw costs O(r).
class YSampler {
 public:
  explicit YSampler(int n);
  int draw(int r, Rng& rng);

 private:
  int n_;
  std::vector<int> tokens_;
  std::vector<std::uint8_t> seen_;
};

// One draw of Y. Throws std::invalid_argument for r outside [0, 2n].
int y_sample(int n, int r, Rng& rng);

// Pr[Y = u] for u = 0..floor(r/2), exactly:
// C(n,u) C(n-u, r-2u) 2^(r-2u) / C(2n, r).
std::vector<Rational> y_exact_distribution(int n, int r);

// E[Y] = n * (r/2n) * ((r-1)/(2n-1)).
Rational y_expectation(int n, int r);

// Pr[Y >= t] from the exact law.
Rational y_exact_tail(int n, int r, int t);

// exp(-t * ln(4nt / (e r^2))). Throws for t < 1 or r < 1.
double y_tail_bound(int n, int r, int t);

// True when 4nt / (e r^2) >= 1, i.e. the bound is at most 1.
bool y_tail_bound_informative(int n, int r, int t);

// floor((2/e) sqrt(n t)): the largest r for which the bound is <= e^-t.
int y_critical_r(int n, int t);

// Bernoulli relative entropy a ln(a/p) + (1-a) ln((1-a)/(1-p)); a, p in (0,1).
double relent(double a, double p);

// exp(-n D(a||p)), an upper bound on Pr[Bin(n, p) >= a n]. Needs 0 < p < a < 1.
double chernoff_tail(int n, double a, double p);

struct TailEstimate {
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  double estimate = 0.0;
  // Binomial standard error sqrt(q(1-q)/trials) evaluated at q = reference.
  double sigma = 0.0;
};

// Monte Carlo estimate of Pr[Y >= t]. Trials run in blocks of 1024 and block
// b draws from Rng(split_seed(seed, b)), so the result does not depend on
// `jobs`.
TailEstimate y_tail_monte_carlo(const YExperiment& exp, double reference, int jobs = 1);

}  // namespace memlab
