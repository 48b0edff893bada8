#pragma once

// Seeded randomness for the whole project. Every consumer derives its own
// stream from an explicit 64-bit seed via named substreams; there is no
// global RNG state. Distributions are implemented here (rather than with
// std::*_distribution) so that the draw sequence is fixed by this code
// alone and runs stay byte-reproducible.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace sceneest {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

constexpr std::uint64_t seed_mix(std::uint64_t base, std::uint64_t key) {
  return splitmix64(base ^ splitmix64(key));
}

inline std::uint64_t substream(std::uint64_t base, std::string_view tag) {
  return seed_mix(base, fnv1a64(tag));
}

inline std::uint64_t substream(std::uint64_t base, std::string_view tag,
                               std::uint64_t index) {
  return seed_mix(seed_mix(base, fnv1a64(tag)), index);
}

inline std::uint64_t substream(std::uint64_t base, std::string_view tag,
                               std::uint64_t i, std::uint64_t j) {
  return seed_mix(substream(base, tag, i), j);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Unbiased integer in [0, n), n >= 1.
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  // Box-Muller; consumes exactly two uniforms per call.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  Eigen::Vector3d normal3(double sigma) {
    return {sigma * normal(), sigma * normal(), sigma * normal()};
  }

  int poisson(double lambda) {
    int count = 0;
    while (lambda > 30.0) {  // split so exp() below stays well above underflow
      count += poisson_knuth(30.0);
      lambda -= 30.0;
    }
    return count + poisson_knuth(lambda);
  }

  // Marsaglia-Tsang; shape > 0, unit scale.
  double gamma(double shape) {
    if (shape < 1.0) {
      const double u = 1.0 - uniform();
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
      const double u = 1.0 - uniform();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
        return d * v;
      }
    }
  }

  double beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x / (x + y);
  }

  // Shoemake's method: uniform over unit quaternions (Haar measure on SO(3)).
  Eigen::Quaterniond uniform_quaternion() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double u3 = uniform();
    const double two_pi = 2.0 * std::numbers::pi;
    const double a = std::sqrt(1.0 - u1);
    const double b = std::sqrt(u1);
    return Eigen::Quaterniond(b * std::cos(two_pi * u3),
                              a * std::sin(two_pi * u2),
                              a * std::cos(two_pi * u2),
                              b * std::sin(two_pi * u3));
  }

  // Isotropic axis-angle perturbation: rotation vector drawn from
  // N(0, sigma^2 I_3).
  Eigen::Quaterniond rotation_noise(double sigma) {
    const Eigen::Vector3d w = normal3(sigma);
    const double angle = w.norm();
    if (angle < 1e-300) {
      return Eigen::Quaterniond::Identity();
    }
    return Eigen::Quaterniond(Eigen::AngleAxisd(angle, w / angle));
  }

 private:
  int poisson_knuth(double lambda) {
    if (lambda <= 0.0) return 0;
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform();
    } while (p > limit);
    return k - 1;
  }

  std::mt19937_64 gen_;
};

}  // namespace sceneest
