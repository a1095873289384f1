#pragma once
// Counter-based deterministic random numbers.  Every draw is a pure function
// of (seed, counter), so independent streams and reproducible parallel use
// come for free; the generator name reported in output files is
// "splitmix64-counter".

#include <cmath>
#include <cstdint>
#include <string>

#include "stringloc/minkowski.hpp"

namespace stringloc {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  explicit CounterRng(uint64_t seed, uint64_t stream = 0)
      : base_(splitmix64(seed ^ splitmix64(stream))), counter_(0) {}

  // Derives an independent stream labelled by a string (e.g. a check name).
  CounterRng stream(const std::string& label) const {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : label) h = (h ^ ch) * 1099511628211ULL;
    return CounterRng(base_ ^ splitmix64(h));
  }

  uint64_t next_word() { return splitmix64(base_ + ++counter_); }

  double uniform() {  // in [0, 1)
    return static_cast<double>(next_word() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    // Box-Muller on a counter pair; u1 shifted away from zero.
    double u1 = (static_cast<double>(next_word() >> 11) + 0.5) * 0x1.0p-53;
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * PI * u2);
  }

  int uniform_int(int n) {  // in {0, ..., n-1}
    return static_cast<int>(uniform() * n) % n;
  }

 private:
  uint64_t base_;
  uint64_t counter_;
};

}  // namespace stringloc
