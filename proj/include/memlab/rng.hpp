#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace memlab {

// All experiments draw from a 64-bit Mersenne Twister. The bounded draws and
// the shuffle below are written out so that a seed reproduces the same stream
// on every standard library (std::uniform_int_distribution is not portable).
using Rng = std::mt19937_64;

// splitmix64 finalizer applied to base ^ golden * (stream + 1). Used to hand
// each worker, trial or cell its own independent seed.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream);

// Uniform integer in [0, bound). bound must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

template <class T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t k = items.size(); k > 1; --k) {
    auto pick = static_cast<std::size_t>(uniform_below(rng, k));
    using std::swap;
    swap(items[k - 1], items[pick]);
  }
}

}  // namespace memlab
