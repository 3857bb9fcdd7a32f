#pragma once

#include <cmath>
#include <cstdint>

namespace hdbf {

// xoshiro256++ with SplitMix64 seeding.
//
// Substream contract: stream k of master seed s is seeded with
//   mix(s + (k + 1) * 0x9E3779B97F4A7C15)
// where mix is the SplitMix64 finalizer, and the four state words are then
// drawn from a fresh SplitMix64 run at that value. Distinct (seed, stream)
// pairs land in unrelated regions of the state space, so replications can
// be dispatched to threads in any order with serial-identical results.
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) {
    std::uint64_t z = seed;
    for (auto& w : s_) {
      z += 0x9E3779B97F4A7C15ULL;
      w = mix(z);
    }
    spare_valid_ = false;
  }

  Rng(std::uint64_t seed, std::uint64_t stream)
      : Rng(mix(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL)) {}

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~0ULL; }

  std::uint64_t operator()() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // uniform on (0,1), never exactly 0 or 1
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

  // standard normal, Marsaglia polar with one cached spare
  double normal() {
    if (spare_valid_) {
      spare_valid_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    spare_valid_ = true;
    return u * f;
  }

  // Gamma(shape, scale=1), Marsaglia-Tsang
  double gamma(double shape) {
    if (shape < 1.0) {
      const double u = uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // chi-square with real df > 0
  double chi_square(double df) { return 2.0 * gamma(0.5 * df); }

  // Student t with real df > 0, ratio construction
  double student_t(double df) { return normal() / std::sqrt(chi_square(df) / df); }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  // SplitMix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t s_[4];
  double spare_ = 0.0;
  bool spare_valid_ = false;
};

}  // namespace hdbf
