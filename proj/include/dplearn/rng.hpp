#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace dplearn {

// Splittable seeded randomness. Every consumer receives a child stream
// derived from (base seed, label), so results do not depend on draw order
// elsewhere in the program. mt19937_64 keeps draws identical across runs.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

  RandomSource child(std::string_view label) const {
    return RandomSource(derive(seed_, label));
  }

  RandomSource child(std::string_view label, std::uint64_t index) const {
    std::string full(label);
    full += '/';
    full += std::to_string(index);
    return child(full);
  }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0,1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0,n) by rejection, unbiased.
  std::size_t uniform_index(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = next_u64();
    while (v >= limit) v = next_u64();
    return static_cast<std::size_t>(v % n);
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Two-sided geometric difference: P[Z = z] proportional to exp(-eps*|z|).
  std::int64_t discrete_laplace(double eps) {
    const double p = std::exp(-eps);
    return geometric(p) - geometric(p);
  }

  static std::uint64_t derive(std::uint64_t seed, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ mix(seed);
    for (unsigned char c : label) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    return mix(h);
  }

 private:
  // G >= 0 with P[G = g] = (1-p) p^g.
  std::int64_t geometric(double p) {
    double u = uniform();
    if (u >= 1.0) u = std::nextafter(1.0, 0.0);
    return static_cast<std::int64_t>(std::floor(std::log1p(-u) / std::log(p)));
  }

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace dplearn
