#include "mimo/model.hpp"

#include <cmath>
#include <string>

#include "mimo/dsp.hpp"

namespace mimo {

double energy(std::span<const Complex> x) {
  double sum = 0.0;
  for (const Complex& v : x) sum += std::norm(v);
  return sum;
}

double spectral_energy(std::span<const Complex> x) {
  if (x.empty()) return 0.0;
  std::vector<Complex> spectrum(x.begin(), x.end());
  dsp::fft_forward(spectrum);
  return energy(spectrum) / static_cast<double>(x.size());
}

bool all_finite(std::span<const Complex> x) {
  for (const Complex& v : x) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

Complex unit_phasor(double cycles) {
  const double frac = cycles - std::floor(cycles);
  return std::polar(1.0, kTwoPi * frac);
}

void FastSlowMatrix::add_outer(std::span<const Complex> fast, std::span<const Complex> slow) {
  if (fast.size() != n_fast_ || slow.size() != n_slow_) {
    throw std::invalid_argument("add_outer: vector lengths do not match matrix shape");
  }
  for (std::size_t m = 0; m < n_slow_; ++m) {
    const Complex s = slow[m];
    Complex* col = data_.data() + m * n_fast_;
    for (std::size_t n = 0; n < n_fast_; ++n) col[n] += fast[n] * s;
  }
}

void Scene::validate() const {
  if (!(noise_power >= 0.0) || !std::isfinite(noise_power)) {
    throw std::invalid_argument("scene noise_power must be finite and >= 0");
  }
  for (const PointTarget& t : targets) {
    if (!std::isfinite(t.range_m) || !std::isfinite(t.velocity_mps) ||
        !std::isfinite(t.amplitude.real()) || !std::isfinite(t.amplitude.imag())) {
      throw std::invalid_argument("scene target has a non-finite field");
    }
    if (t.range_m < 0.0) {
      throw std::invalid_argument("scene target range must be >= 0, got " +
                                  std::to_string(t.range_m));
    }
  }
}

DelayDoppler target_to_delay_doppler(const PointTarget& target, double carrier_hz) {
  if (!(carrier_hz > 0.0)) throw std::invalid_argument("carrier frequency must be > 0");
  return {2.0 * target.range_m / kSpeedOfLight,
          2.0 * target.velocity_mps * carrier_hz / kSpeedOfLight};
}

double range_for_delay(double delay_s) { return 0.5 * delay_s * kSpeedOfLight; }

double velocity_for_doppler(double doppler_hz, double carrier_hz) {
  if (!(carrier_hz > 0.0)) throw std::invalid_argument("carrier frequency must be > 0");
  return doppler_hz * kSpeedOfLight / (2.0 * carrier_hz);
}

}  // namespace mimo
