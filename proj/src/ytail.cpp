#include "memlab/ytail.hpp"

#include "memlab/parallel.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace memlab {

namespace {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt c = 1;
  for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

void check_r(int n, int r) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (r < 0 || r > 2 * n) {
    throw std::invalid_argument("r must lie in [0, 2n]; got r=" + std::to_string(r) +
                                " for n=" + std::to_string(n));
  }
}

constexpr std::int64_t kTrialsPerBlock = 1024;

}  // namespace

YSampler::YSampler(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  tokens_.resize(2 * static_cast<std::size_t>(n));
  std::iota(tokens_.begin(), tokens_.end(), 0);
  seen_.assign(static_cast<std::size_t>(n), 0);
}

int YSampler::draw(int r, Rng& rng) {
  check_r(n_, r);
  const auto len = tokens_.size();
  int completed = 0;
  // Partial Fisher-Yates; tokens 2j and 2j+1 are (j,0) and (j,1).
  for (int k = 0; k < r; ++k) {
    const auto pick = static_cast<std::size_t>(k) + uniform_below(rng, len - static_cast<std::size_t>(k));
    std::swap(tokens_[static_cast<std::size_t>(k)], tokens_[pick]);
    auto& s = seen_[static_cast<std::size_t>(tokens_[static_cast<std::size_t>(k)] / 2)];
    if (s) ++completed;
    s = 1;
  }
  for (int k = 0; k < r; ++k) seen_[static_cast<std::size_t>(tokens_[static_cast<std::size_t>(k)] / 2)] = 0;
  return completed;
}

int y_sample(int n, int r, Rng& rng) { return YSampler(n).draw(r, rng); }

std::vector<Rational> y_exact_distribution(int n, int r) {
  check_r(n, r);
  const BigInt total = binomial(2 * n, r);
  std::vector<Rational> dist;
  for (int u = 0; 2 * u <= r; ++u) {
    BigInt ways = binomial(n, u) * binomial(n - u, r - 2 * u);
    ways <<= (r - 2 * u);
    dist.emplace_back(ways, total);
  }
  return dist;
}

Rational y_expectation(int n, int r) {
  check_r(n, r);
  return Rational(n) * Rational(r, 2 * n) * Rational(r - 1, 2 * n - 1);
}

Rational y_exact_tail(int n, int r, int t) {
  const auto dist = y_exact_distribution(n, r);
  Rational tail = 0;
  for (int u = std::max(t, 0); u < static_cast<int>(dist.size()); ++u) tail += dist[static_cast<std::size_t>(u)];
  return tail;
}

double y_tail_bound(int n, int r, int t) {
  if (t < 1 || r < 1) throw std::invalid_argument("y_tail_bound needs t >= 1 and r >= 1");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const double ratio = 4.0 * n * t / (std::numbers::e * static_cast<double>(r) * r);
  return std::exp(-t * std::log(ratio));
}

bool y_tail_bound_informative(int n, int r, int t) {
  return 4.0 * n * t >= std::numbers::e * static_cast<double>(r) * r;
}

int y_critical_r(int n, int t) {
  return static_cast<int>(std::floor(2.0 / std::numbers::e * std::sqrt(static_cast<double>(n) * t)));
}

double relent(double a, double p) {
  if (!(a > 0 && a < 1 && p > 0 && p < 1)) throw std::invalid_argument("relent needs a, p in (0, 1)");
  return a * std::log(a / p) + (1 - a) * std::log((1 - a) / (1 - p));
}

double chernoff_tail(int n, double a, double p) {
  if (!(p > 0 && p < a && a < 1)) throw std::invalid_argument("chernoff_tail needs 0 < p < a < 1");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  return std::exp(-n * relent(a, p));
}

TailEstimate y_tail_monte_carlo(const YExperiment& exp, double reference, int jobs) {
  check_r(exp.n, exp.r);
  if (exp.trials < 1) throw std::invalid_argument("trials must be positive");
  const auto blocks = static_cast<std::size_t>((exp.trials + kTrialsPerBlock - 1) / kTrialsPerBlock);
  const auto hits = parallel_map(blocks, jobs, [&](std::size_t b) {
    Rng rng(split_seed(exp.seed, b));
    YSampler sampler(exp.n);
    const std::int64_t begin = static_cast<std::int64_t>(b) * kTrialsPerBlock;
    const std::int64_t end = std::min(exp.trials, begin + kTrialsPerBlock);
    std::int64_t h = 0;
    for (std::int64_t k = begin; k < end; ++k) h += sampler.draw(exp.r, rng) >= exp.t ? 1 : 0;
    return h;
  });
  TailEstimate est;
  est.trials = exp.trials;
  est.hits = std::accumulate(hits.begin(), hits.end(), std::int64_t{0});
  est.estimate = static_cast<double>(est.hits) / static_cast<double>(exp.trials);
  const double q = std::clamp(reference, 0.0, 1.0);
  est.sigma = std::sqrt(q * (1 - q) / static_cast<double>(exp.trials));
  return est;
}

}  // namespace memlab
