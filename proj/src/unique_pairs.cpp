#include "memlab/unique_pairs.hpp"

#include "memlab/parallel.hpp"
#include "memlab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace memlab {

std::vector<std::pair<int, int>> unique_pairs(std::span<const int> xs, int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (xs.size() != 2 * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("expected " + std::to_string(2 * n) + " entries, got " + std::to_string(xs.size()));
  }
  std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (xs[k] < 1 || xs[k] > n) {
      throw std::invalid_argument("entry " + std::to_string(k + 1) + " = " + std::to_string(xs[k]) +
                                  " lies outside [1, " + std::to_string(n) + "]");
    }
    ++count[static_cast<std::size_t>(xs[k])];
  }
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (count[static_cast<std::size_t>(xs[i])] != 2) continue;
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[j] == xs[i]) out.emplace_back(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
    }
  }
  return out;
}

namespace {

double pair_probability(int n) {
  return (1.0 / n) * std::pow(1.0 - 1.0 / n, 2.0 * n - 2);
}

}  // namespace

double unique_pairs_binom_n_formula(int n) { return n * (n - 1) / 2.0 * pair_probability(n); }

double unique_pairs_binom_2n_formula(int n) { return n * (2.0 * n - 1) * pair_probability(n); }

double unique_pairs_lower_bound(int n) { return (n - 1) / (2 * std::numbers::e * std::numbers::e); }

Rational unique_pairs_exact_expectation(int n, std::uint64_t cap) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  BigInt total = 1;
  for (int k = 0; k < 2 * n; ++k) total *= n;
  if (total > cap) {
    throw CapExceeded("enumerating " + total.str() + " inputs exceeds the cap of " + std::to_string(cap), total);
  }
  std::vector<int> xs(2 * static_cast<std::size_t>(n), 1);
  BigInt outputs = 0;
  while (true) {
    outputs += unique_pairs(xs, n).size();
    std::size_t k = 0;
    while (k < xs.size() && xs[k] == n) xs[k++] = 1;
    if (k == xs.size()) break;
    ++xs[k];
  }
  return Rational(outputs, total);
}

UniquePairsEstimate unique_pairs_expected(int n, std::int64_t trials, std::uint64_t seed, int jobs,
                                          std::uint64_t cap) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (trials < 2) throw std::invalid_argument("need at least 2 trials");
  const auto counts = parallel_map(static_cast<std::size_t>(trials), jobs, [&](std::size_t k) {
    Rng rng(split_seed(seed, k));
    std::vector<int> xs(2 * static_cast<std::size_t>(n));
    for (int& v : xs) v = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
    return static_cast<double>(unique_pairs(xs, n).size());
  });
  UniquePairsEstimate est;
  est.n = n;
  est.trials = trials;
  double sum = 0;
  double sumsq = 0;
  for (double c : counts) {
    sum += c;
    sumsq += c * c;
  }
  const double N = static_cast<double>(trials);
  est.estimate = sum / N;
  const double var = std::max(0.0, (sumsq - N * est.estimate * est.estimate) / (N - 1));
  est.std_error = std::sqrt(var / N);
  est.binom_n = unique_pairs_binom_n_formula(n);
  est.binom_2n = unique_pairs_binom_2n_formula(n);
  est.bound = unique_pairs_lower_bound(n);
  BigInt space = 1;
  for (int k = 0; k < 2 * n && space <= cap; ++k) space *= n;
  if (space <= cap) est.exact = unique_pairs_exact_expectation(n, cap);
  est.ok = est.estimate + 3 * est.std_error > est.bound;
  return est;
}

}  // namespace memlab
