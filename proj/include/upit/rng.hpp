#pragma once

#include <random>

#include "upit/ff.hpp"

namespace upit {

// Deterministic random source for instance generators and the randomized
// zero tester. std::mt19937_64 has a bit-exact output sequence fixed by the
// C++ standard, so (params, seed) reproduce across platforms and languages
// with a conforming implementation. Bounded draws use rejection sampling
// below the largest multiple of the bound, never std::uniform_int_distribution
// (whose mapping is implementation-defined).
class Rng {
 public:
  explicit Rng(u64 seed) : eng_(seed) {}

  u64 next_u64() { return eng_(); }

  // Uniform in [0, bound), bound >= 1.
  u64 uniform(u64 bound) {
    if (bound == 0) throw std::invalid_argument("Rng::uniform: zero bound");
    const u128 limit = (u128(1) << 64) / bound * bound;
    u64 r = eng_();
    while (u128(r) >= limit) r = eng_();
    return r % bound;
  }

  u64 field_element(const PrimeField& f) { return uniform(f.modulus()); }

  u64 nonzero_field_element(const PrimeField& f) {
    return 1 + uniform(f.modulus() - 1);
  }

  // Uniform in [0, 1) with 53-bit resolution; used only for branch
  // probabilities, the bit pattern is deterministic.
  double unit() { return double(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace upit
