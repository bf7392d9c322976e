#include "mimo/rng.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mimo {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be > 0");
  __extension__ using u128 = unsigned __int128;
  const u128 wide = static_cast<u128>(next()) * bound;
  return static_cast<std::uint64_t>(wide >> 64);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

Complex Rng::complex_gaussian(double power) {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-power * std::log(u1));
  return std::polar(radius, kTwoPi * u2);
}

std::vector<std::size_t> uniform_permutation(Rng& rng, std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform_permutation: n must be >= 1");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  shuffle(rng, std::span<std::size_t>(perm));
  return perm;
}

}  // namespace mimo
