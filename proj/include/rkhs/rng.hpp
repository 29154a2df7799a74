// Deterministic random source. The generator is splitmix64: state advances by
// the golden-ratio increment 0x9E3779B97F4A7C15 and each output is finalized
// with two xor-shift-multiply rounds (constants 0xBF58476D1CE4E5B9,
// 0x94D049BB133111EB). Substreams are keyed by (seed, index) so draws for
// task i never depend on how many draws earlier tasks consumed.
#pragma once

#include <cmath>
#include <cstdint>

#include "rkhs/errors.hpp"
#include "rkhs/numerics.hpp"

namespace rkhs {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  // uniform in [0, 1), 53-bit resolution
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double next_uniform(double a, double b) { return a + (b - a) * next_double(); }

  // uniform on the open disc |z| < radius, rejection from the bounding square
  Cplx next_disc(double radius) {
    for (int i = 0; i < 1000000; ++i) {
      Cplx z(next_uniform(-radius, radius), next_uniform(-radius, radius));
      if (std::abs(z) < radius) return z;
    }
    throw SamplerExhausted("disc rejection sampler exceeded attempt budget");
  }

  // standard complex gaussian, E|z|^2 = 1
  Cplx next_gaussian() {
    double u = next_double();
    double r = std::sqrt(-std::log1p(-u));
    double t = 6.283185307179586476925286766559 * next_double();
    return Cplx(r * std::cos(t), r * std::sin(t));
  }

  // Independent stream keyed by (current state, index). Derive substreams
  // from a freshly seeded Rng before drawing from it, so the key is (seed, i).
  Rng substream(std::uint64_t index) const {
    std::uint64_t s = state_ ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    return Rng(splitmix64_next(s));
  }

 private:
  std::uint64_t state_;
};

}  // namespace rkhs
