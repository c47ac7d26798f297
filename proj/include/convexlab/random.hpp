#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "convexlab/types.hpp"

namespace convexlab {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based seed derivation: the result depends only on the arguments,
// never on evaluation order, so work can be split across threads freely.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0,
                                    std::uint64_t tag = 0) noexcept {
  std::uint64_t h = mix64(master ^ 0x5851f42d4c957f2dULL);
  h = mix64(h ^ a);
  h = mix64(h ^ (b * 0x2545f4914f6cdd1dULL));
  return mix64(h ^ (tag + 0x14057b7ef767814fULL));
}

// Lightweight SplitMix64 stream satisfying UniformRandomBitGenerator.
class Substream {
 public:
  using result_type = std::uint64_t;

  explicit Substream(std::uint64_t seed) : state_(seed) {}
  Substream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
            std::uint64_t tag = 0)
      : state_(derive_seed(master, a, b, tag)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

  double normal() {
    std::normal_distribution<double> dist;
    return dist(*this);
  }

  Vector normal_vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  Direction direction(Eigen::Index n) {
    for (;;) {
      Vector v = normal_vector(n);
      if (v.norm() > 1e-300) return Direction(v);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace convexlab
