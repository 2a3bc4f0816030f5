#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace irrep {

// splitmix64 step; derives independent substream seeds from (seed, stream)
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Seeded generator with an explicit uint64 -> double mapping so that the same
// seed reproduces the same draws on any platform with the same build.
class rng {
 public:
  explicit rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // uniform in [0, 1)
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // uniform in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // uniform in [-1, 1), resampled until |x| >= min_mag
  double uniform_signed(double min_mag = 0.0) {
    double x;
    do {
      x = 2.0 * unit() - 1.0;
    } while (std::abs(x) < min_mag);
    return x;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace irrep
