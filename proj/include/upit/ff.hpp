#pragma once

#include <cstdint>
#include <stdexcept>

namespace upit {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// 2^61 - 1. Far above every degree, grid size and anchor count the
// constructions in this library produce at feasible scales.
inline constexpr u64 kDefaultModulus = (u64{1} << 61) - 1;

// Deterministic Miller-Rabin, valid for the full u64 range.
bool is_prime_u64(u64 n);

// Prime field F_p with canonical residues in [0, p).
//
// PrimeField is a small value type: containers (polynomials, gates,
// circuits) carry one and keep elements as raw u64 residues. Objects built
// over different moduli must never meet; containers enforce that with
// require_same_field.
class PrimeField {
 public:
  PrimeField() : p_(kDefaultModulus) {}
  explicit PrimeField(u64 p);

  u64 modulus() const { return p_; }

  u64 reduce_uint(u64 x) const { return x % p_; }
  u64 from_int(i64 x) const;

  u64 add(u64 a, u64 b) const {
    u64 r = a + b;  // cannot wrap: a, b < p < 2^63
    return r >= p_ ? r - p_ : r;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + (p_ - b); }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const { return u64((u128(a) * b) % p_); }
  u64 pow(u64 base, u64 exp) const;
  u64 inv(u64 a) const;  // throws std::domain_error on a == 0
  u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  u64 p_;
};

// Throws std::invalid_argument when two objects with different moduli meet.
void require_same_field(const PrimeField& a, const PrimeField& b);

}  // namespace upit
