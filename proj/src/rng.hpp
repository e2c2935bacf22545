#ifndef INTREG_RNG_HPP
#define INTREG_RNG_HPP

#include <cmath>
#include <cstdint>

namespace intreg {

// splitmix64 step.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Deterministic splittable stream. <random> distributions are avoided on
// purpose: the standard leaves their output sequences unspecified, and the
// simulation contract requires bit-identical serial and parallel runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // Warm up so that small seeds decorrelate.
    splitmix64(state_);
  }

  // Independent stream for replicate r of a study seeded with `seed`.
  static Rng stream(std::uint64_t seed, std::uint64_t replicate) {
    std::uint64_t s = seed ^ (0xA0761D6478BD642FULL * (replicate + 1));
    splitmix64(s);
    return Rng(s);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller, cosine branch only.
  double normal(double loc, double scale) {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return loc + scale * r * std::cos(2.0 * M_PI * u2);
  }

  // Sum of df squared standard normals (df is small here).
  double chi_square(int df) {
    double acc = 0.0;
    for (int i = 0; i < df; ++i) {
      const double z = normal(0.0, 1.0);
      acc += z * z;
    }
    return acc;
  }

 private:
  std::uint64_t state_;
};

}  // namespace intreg

#endif
