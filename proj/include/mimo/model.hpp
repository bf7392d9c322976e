#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace mimo {

using Complex = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Sampled baseband signal with its sample rate.
struct ComplexBuffer {
  double sample_rate_hz = 0.0;
  std::vector<Complex> samples;
};

// Sum of |x|^2.
double energy(std::span<const Complex> x);

// (1/N) * sum |DFT(x)|^2; equals energy(x) by Parseval.
double spectral_energy(std::span<const Complex> x);

// True when every sample has finite real and imaginary parts.
bool all_finite(std::span<const Complex> x);

// exp(j*2*pi*cycles), with the integer part of `cycles` discarded first so
// large phase arguments keep full precision.
Complex unit_phasor(double cycles);

// Fast-time x slow-time matrix. Each sweep (slow index) is stored
// contiguously, so sweep(m) is a span of n_fast() samples.
class FastSlowMatrix {
 public:
  FastSlowMatrix() = default;
  FastSlowMatrix(std::size_t n_fast, std::size_t n_slow)
      : n_fast_(n_fast), n_slow_(n_slow), data_(n_fast * n_slow) {}

  std::size_t n_fast() const { return n_fast_; }
  std::size_t n_slow() const { return n_slow_; }

  Complex& at(std::size_t fast, std::size_t slow) { return data_[slow * n_fast_ + fast]; }
  const Complex& at(std::size_t fast, std::size_t slow) const {
    return data_[slow * n_fast_ + fast];
  }

  std::span<Complex> sweep(std::size_t slow) {
    return {data_.data() + slow * n_fast_, n_fast_};
  }
  std::span<const Complex> sweep(std::size_t slow) const {
    return {data_.data() + slow * n_fast_, n_fast_};
  }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  // this += fast (outer) slow
  void add_outer(std::span<const Complex> fast, std::span<const Complex> slow);

 private:
  std::size_t n_fast_ = 0;
  std::size_t n_slow_ = 0;
  std::vector<Complex> data_;
};

struct PointTarget {
  double range_m = 0.0;
  // Positive velocity is a closing target and produces a positive Doppler shift.
  double velocity_mps = 0.0;
  Complex amplitude{1.0, 0.0};
};

struct Scene {
  std::vector<PointTarget> targets;
  double noise_power = 0.0;  // linear, per complex sample; 0 is noiseless

  void validate() const;
};

struct DelayDoppler {
  double delay_s = 0.0;
  double doppler_hz = 0.0;
};

// tau = 2R/c, fD = 2 v fc / c.
DelayDoppler target_to_delay_doppler(const PointTarget& target, double carrier_hz);

// Inverse helpers used to place targets on a processing grid.
double range_for_delay(double delay_s);
double velocity_for_doppler(double doppler_hz, double carrier_hz);

// Processed output for one transmitter channel, indexed [range][doppler].
class RangeDopplerMap {
 public:
  RangeDopplerMap() = default;
  RangeDopplerMap(std::size_t n_range, std::size_t n_doppler, double range_bin_m,
                  double doppler_bin_mps, std::size_t tx_index)
      : n_range_(n_range),
        n_doppler_(n_doppler),
        range_bin_m_(range_bin_m),
        doppler_bin_mps_(doppler_bin_mps),
        tx_index_(tx_index),
        data_(n_range * n_doppler) {}

  std::size_t n_range() const { return n_range_; }
  std::size_t n_doppler() const { return n_doppler_; }
  double range_bin_m() const { return range_bin_m_; }
  double doppler_bin_mps() const { return doppler_bin_mps_; }
  std::size_t tx_index() const { return tx_index_; }

  Complex& at(std::size_t range, std::size_t doppler) {
    return data_[range * n_doppler_ + doppler];
  }
  const Complex& at(std::size_t range, std::size_t doppler) const {
    return data_[range * n_doppler_ + doppler];
  }

  std::span<Complex> range_row(std::size_t range) {
    return {data_.data() + range * n_doppler_, n_doppler_};
  }
  std::span<const Complex> range_row(std::size_t range) const {
    return {data_.data() + range * n_doppler_, n_doppler_};
  }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

 private:
  std::size_t n_range_ = 0;
  std::size_t n_doppler_ = 0;
  double range_bin_m_ = 0.0;
  double doppler_bin_mps_ = 0.0;
  std::size_t tx_index_ = 0;
  std::vector<Complex> data_;
};

}  // namespace mimo
