#pragma once

#include <cstdint>
#include <cmath>

namespace evdep {

// Small, fast, splittable generator used for every randomized path in the
// library. Streams are identified purely by their 64-bit seed, so derived
// seeds (see derive_seed) give reproducible, order-independent parallelism.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Hash-combines a master seed with stream indices (cell index, replication
// index, ...). Equal inputs give equal streams on every platform.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a) {
  return mix64(master ^ mix64(a + 0x632be59bd9b4e019ull));
}
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) {
  return derive_seed(derive_seed(master, a), b);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(SplitMix64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// Standard normal stream via Box-Muller; consumes uniforms in a fixed order
// so a given seed always yields the same sequence.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : gen_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01(gen_);
    double u2 = uniform01(gen_);
    // u1 = 0 would take log(0); shift into (0,1].
    double rad = std::sqrt(-2.0 * std::log1p(-u1));
    double ang = 6.283185307179586476925286766559 * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

 private:
  SplitMix64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace evdep
