#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mimo {

// Polynomial over GF(2); bit i of the mask is the coefficient of x^i.
class BinaryPolynomial {
 public:
  constexpr explicit BinaryPolynomial(std::uint32_t mask) : mask_(mask) {}

  constexpr std::uint32_t mask() const { return mask_; }

  // Index of the highest set bit; -1 for the zero polynomial.
  constexpr int degree() const {
    int d = -1;
    for (std::uint32_t m = mask_; m != 0; m >>= 1) ++d;
    return d;
  }

  constexpr bool coefficient(int power) const { return ((mask_ >> power) & 1U) != 0; }

  // e.g. "x^3+x+1"
  std::string to_string() const;

  friend constexpr bool operator==(BinaryPolynomial, BinaryPolynomial) = default;

 private:
  std::uint32_t mask_;
};

// Binary phase code with chips in {+1, -1}.
struct PhaseCode {
  std::vector<std::int8_t> chips;

  std::size_t size() const { return chips.size(); }
  int operator[](std::size_t i) const { return chips[i]; }

  static PhaseCode all_ones(std::size_t length);
};

inline constexpr int kMinDegree = 2;
inline constexpr int kMaxDegree = 16;

// Order of x modulo p equals 2^n - 1. Throws std::invalid_argument when the
// degree is outside [2, 16].
bool is_primitive(BinaryPolynomial p);

// One period of the maximal sequence of a Fibonacci LFSR.
//
// The register holds n stages s[0..n-1] (bit i of `init_state` is s[i]). Each
// step outputs s[n-1], computes the feedback as the XOR of s[i-1] over every
// i in 1..n with a nonzero x^i coefficient, shifts s[i] <- s[i-1] and loads the
// feedback into s[0]. Output bit 0 maps to chip +1 and bit 1 to chip -1.
PhaseCode lfsr_msequence(BinaryPolynomial p, std::uint32_t init_state);

// r[k] = sum_i a[i] * b[(i + k) mod M], computed with FFTs and rounded to the
// exact integers.
std::vector<std::int64_t> cyclic_correlate(const PhaseCode& a, const PhaseCode& b);

// Primitive polynomials of the given degree in ascending mask order.
std::vector<BinaryPolynomial> primitive_polynomials(int degree);

// One m-sequence per primitive polynomial (ascending mask), all-ones seed.
std::vector<PhaseCode> enumerate_family(int degree);

// Degree n with 2^n - 1 == length, or -1.
int msequence_degree_for_length(std::size_t length);

struct CodeStats {
  BinaryPolynomial polynomial{0};
  std::size_t length = 0;
  std::size_t plus_ones = 0;
  std::size_t minus_ones = 0;
  std::int64_t autocorr_peak = 0;
  std::int64_t autocorr_max_sidelobe = 0;  // max |r[k]|, k != 0
  bool two_valued = false;                 // r[k != 0] == -1 everywhere
  std::int64_t max_cross = 0;              // max |r| against every other family member
};

// Statistics for every member of the degree-n family, including the
// exhaustive pairwise cross-correlation maximum.
std::vector<CodeStats> family_statistics(int degree);

}  // namespace mimo
