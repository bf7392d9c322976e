#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mimo/model.hpp"

namespace mimo {

// splitmix64 finalizer applied to x + golden gamma: the first output of a
// generator seeded with x.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Per-trial seed; independent of the order in which trials are evaluated.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  return splitmix64(base_seed ^ index);
}

// splitmix64 stream. All randomness in the simulator goes through this type so
// that every stream is reproducible bit-for-bit from its seed.
class Rng {
 public:
  constexpr explicit Rng(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t state() const { return state_; }

  // Integer in [0, bound) as the high word of next() * bound.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // Circular complex Gaussian with E|z|^2 = power (Box-Muller).
  Complex complex_gaussian(double power);

 private:
  std::uint64_t state_;
};

// Fisher-Yates from the top index down: for i = n-1..1, swap(p[i], p[below(i+1)]).
std::vector<std::size_t> uniform_permutation(Rng& rng, std::size_t n);

template <typename T>
void shuffle(Rng& rng, std::span<T> values) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace mimo
