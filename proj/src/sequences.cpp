#include "mimo/sequences.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "mimo/dsp.hpp"
#include "mimo/model.hpp"

namespace mimo {

namespace {

void check_degree(int degree) {
  if (degree < kMinDegree || degree > kMaxDegree) {
    throw std::invalid_argument("polynomial degree " + std::to_string(degree) +
                                " outside supported range [2, 16]");
  }
}

// a * b mod p over GF(2); operands have degree < n.
std::uint32_t mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t p, int n) {
  std::uint32_t result = 0;
  const std::uint32_t top = 1U << n;
  while (b != 0) {
    if ((b & 1U) != 0) result ^= a;
    b >>= 1;
    a <<= 1;
    if ((a & top) != 0) a ^= p;
  }
  return result;
}

std::uint32_t powmod_x(std::uint64_t e, std::uint32_t p, int n) {
  std::uint32_t result = 1;
  std::uint32_t base = 2;  // x
  while (e != 0) {
    if ((e & 1U) != 0) result = mulmod(result, base, p, n);
    base = mulmod(base, base, p, n);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> factors;
  for (std::uint64_t f = 2; f * f <= v; ++f) {
    if (v % f == 0) {
      factors.push_back(f);
      while (v % f == 0) v /= f;
    }
  }
  if (v > 1) factors.push_back(v);
  return factors;
}

}  // namespace

std::string BinaryPolynomial::to_string() const {
  std::string out;
  for (int power = degree(); power >= 0; --power) {
    if (!coefficient(power)) continue;
    if (!out.empty()) out += '+';
    if (power == 0) {
      out += '1';
    } else if (power == 1) {
      out += 'x';
    } else {
      out += "x^" + std::to_string(power);
    }
  }
  return out.empty() ? "0" : out;
}

PhaseCode PhaseCode::all_ones(std::size_t length) {
  return PhaseCode{std::vector<std::int8_t>(length, 1)};
}

bool is_primitive(BinaryPolynomial p) {
  const int n = p.degree();
  check_degree(n);
  if (!p.coefficient(0)) return false;
  const std::uint64_t period = (std::uint64_t{1} << n) - 1;
  if (powmod_x(period, p.mask(), n) != 1) return false;
  for (std::uint64_t q : prime_factors(period)) {
    if (powmod_x(period / q, p.mask(), n) == 1) return false;
  }
  return true;
}

PhaseCode lfsr_msequence(BinaryPolynomial p, std::uint32_t init_state) {
  const int n = p.degree();
  check_degree(n);
  const std::uint32_t full = (1U << n) - 1;
  if ((init_state & full) == 0) {
    throw std::invalid_argument("lfsr_msequence: initial state must be nonzero");
  }
  if ((init_state & ~full) != 0) {
    throw std::invalid_argument("lfsr_msequence: initial state wider than the register");
  }
  if (!is_primitive(p)) {
    throw std::invalid_argument("lfsr_msequence: " + p.to_string() + " is not primitive");
  }
  const std::uint32_t taps = (p.mask() >> 1) & full;
  const std::size_t length = full;
  PhaseCode code;
  code.chips.resize(length);
  std::uint32_t state = init_state;
  for (std::size_t i = 0; i < length; ++i) {
    const std::uint32_t out = (state >> (n - 1)) & 1U;
    code.chips[i] = out != 0 ? std::int8_t{-1} : std::int8_t{1};
    const std::uint32_t feedback = static_cast<std::uint32_t>(std::popcount(state & taps)) & 1U;
    state = ((state << 1) | feedback) & full;
  }
  return code;
}

std::vector<std::int64_t> cyclic_correlate(const PhaseCode& a, const PhaseCode& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("cyclic_correlate: length mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                ")");
  }
  const std::size_t m = a.size();
  if (m == 0) return {};
  std::vector<Complex> fa(m);
  std::vector<Complex> fb(m);
  for (std::size_t i = 0; i < m; ++i) {
    fa[i] = static_cast<double>(a[i]);
    fb[i] = static_cast<double>(b[i]);
  }
  dsp::fft_forward(fa);
  dsp::fft_forward(fb);
  // sum_i a[i] b[i+k] = IDFT(conj(A) B)[k]
  for (std::size_t i = 0; i < m; ++i) fa[i] = std::conj(fa[i]) * fb[i];
  dsp::fft_inverse(fa);
  std::vector<std::int64_t> r(m);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) r[k] = std::llround(fa[k].real() * scale);
  return r;
}

std::vector<BinaryPolynomial> primitive_polynomials(int degree) {
  check_degree(degree);
  std::vector<BinaryPolynomial> result;
  const std::uint32_t lo = (1U << degree) | 1U;
  const std::uint32_t hi = 1U << (degree + 1);
  for (std::uint32_t mask = lo; mask < hi; mask += 2) {
    if (is_primitive(BinaryPolynomial(mask))) result.emplace_back(mask);
  }
  return result;
}

std::vector<PhaseCode> enumerate_family(int degree) {
  std::vector<PhaseCode> family;
  const std::uint32_t seed = (1U << degree) - 1;
  for (BinaryPolynomial p : primitive_polynomials(degree)) {
    family.push_back(lfsr_msequence(p, seed));
  }
  return family;
}

int msequence_degree_for_length(std::size_t length) {
  for (int n = kMinDegree; n <= kMaxDegree; ++n) {
    if ((std::size_t{1} << n) - 1 == length) return n;
  }
  return -1;
}

std::vector<CodeStats> family_statistics(int degree) {
  const auto polys = primitive_polynomials(degree);
  std::vector<PhaseCode> codes;
  codes.reserve(polys.size());
  const std::uint32_t seed = (1U << degree) - 1;
  for (BinaryPolynomial p : polys) codes.push_back(lfsr_msequence(p, seed));

  std::vector<CodeStats> stats(codes.size());
  for (std::size_t i = 0; i < codes.size(); ++i) {
    CodeStats& s = stats[i];
    s.polynomial = polys[i];
    s.length = codes[i].size();
    s.plus_ones = static_cast<std::size_t>(
        std::count(codes[i].chips.begin(), codes[i].chips.end(), std::int8_t{1}));
    s.minus_ones = s.length - s.plus_ones;
    const auto r = cyclic_correlate(codes[i], codes[i]);
    s.autocorr_peak = r[0];
    s.two_valued = true;
    for (std::size_t k = 1; k < r.size(); ++k) {
      s.autocorr_max_sidelobe = std::max(s.autocorr_max_sidelobe, std::abs(r[k]));
      if (r[k] != -1) s.two_valued = false;
    }
  }
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      std::int64_t peak = 0;
      for (std::int64_t v : cyclic_correlate(codes[i], codes[j])) peak = std::max(peak, std::abs(v));
      stats[i].max_cross = std::max(stats[i].max_cross, peak);
      stats[j].max_cross = std::max(stats[j].max_cross, peak);
    }
  }
  return stats;
}

}  // namespace mimo
