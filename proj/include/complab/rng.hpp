#ifndef COMPLAB_RNG_HPP_
#define COMPLAB_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <random>

namespace complab {

// SplitMix64 step: advances the state and returns a mixed 64-bit word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stateless finalizer form, used to key hash-addressed draws.
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Replica-stream generator. All variate transforms are written out explicitly
// so that a given (master_seed, stream index) reproduces bit-identical output
// on any conforming standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Exp(1) by inverse CDF; uniform01() < 1 keeps the log argument positive.
  double exp1() { return -std::log(1.0 - uniform01()); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Uniform integer in [0, n), n >= 1. Rejection-free multiply-shift would be
  // biased for huge n; a rejection loop keeps it exact.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::mt19937_64 gen_;
};

// Master seed plus the stream derivation rule: replica i is seeded by
// SplitMix64(master_seed XOR i).
struct RngSpec {
  std::uint64_t master_seed = 0;

  Rng stream(std::uint64_t replica) const {
    std::uint64_t s = master_seed ^ replica;
    return Rng(splitmix64(s));
  }
  std::uint64_t stream_seed(std::uint64_t replica) const {
    std::uint64_t s = master_seed ^ replica;
    return splitmix64(s);
  }
};

// Hash-addressed Exp(1) site weights: random access without storing a field.
inline double hashed_exp1(std::uint64_t key, int x, int y) {
  std::uint64_t k = splitmix64_mix(key ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32 |
                                          static_cast<std::uint32_t>(y)));
  k = splitmix64_mix(k ^ 0xA3C59AC2F1ECC5B7ULL);
  double u = static_cast<double>(k >> 11) * 0x1.0p-53;
  return -std::log(1.0 - u);
}

}  // namespace complab

#endif  // COMPLAB_RNG_HPP_
