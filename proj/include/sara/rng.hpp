// Seeded RNG wrapper with a fixed uint64 -> double mapping so that runs are
// reproducible independent of the standard library's distribution details.
#pragma once

#include <cstdint>
#include <random>

namespace sara {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

  double uniform01() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  bool bernoulli(double p) { return uniform01() < p; }
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sara
