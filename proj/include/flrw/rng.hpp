#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace flrw {

/// Seeded uniform generator with platform-independent output (draws are
/// built from raw mt19937_64 words, not std:: distributions), so fixed
/// seeds give byte-identical reports everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() { return std::ldexp(static_cast<double>(eng_() >> 11), -53); }
  double uniform(double a, double b) { return a + (b - a) * uniform01(); }
  int uniform_int(int a, int b) {  // inclusive
    return a + static_cast<int>(eng_() % static_cast<std::uint64_t>(b - a + 1));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace flrw
