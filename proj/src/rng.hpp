#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace atgm {

// mt19937_64 is fully specified by the standard; the std:: distributions on
// top of it are not. Sampling here uses fixed algorithms so that identical
// seeds give identical streams on every platform.

inline uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Independent stream id for (cell, trial) within a base-seeded experiment.
inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b) {
  uint64_t s = base;
  uint64_t h = splitmix64_next(s);
  s ^= a * 0xd6e8feb86659fd93ULL;
  h ^= splitmix64_next(s);
  s ^= b * 0xa3b195354a39b70dULL;
  h ^= splitmix64_next(s);
  return h;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  // Uniform in [2^-53, 1]: 53 high bits, never exactly zero (log-safe).
  double uniform01() {
    uint64_t x = engine_();
    return static_cast<double>((x >> 11) + 1) * 0x1p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; one spare kept across calls.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Uniform in [0, n); rejection keeps the distribution exact.
  uint64_t below(uint64_t n) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace atgm
