#include "upit/ff.hpp"

#include <string>

namespace upit {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return u64((u128(a) * b) % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These twelve bases decide primality for every n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(u64 p) : p_(p) {
  if (p < 2) throw std::invalid_argument("PrimeField: modulus must be >= 2");
  if (p >= (u64{1} << 63))
    throw std::invalid_argument("PrimeField: modulus must be < 2^63");
  if (!is_prime_u64(p))
    throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) +
                                " is not prime");
}

u64 PrimeField::from_int(i64 x) const {
  if (x >= 0) return u64(x) % p_;
  u64 r = u64(-(x + 1)) % p_;  // avoids overflow at INT64_MIN
  return neg(add(r, 1 % p_));
}

u64 PrimeField::pow(u64 base, u64 exp) const { return powmod(base, exp, p_); }

u64 PrimeField::inv(u64 a) const {
  if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
  return pow(a, p_ - 2);
}

void require_same_field(const PrimeField& a, const PrimeField& b) {
  if (!(a == b))
    throw std::invalid_argument(
        "mixed moduli: " + std::to_string(a.modulus()) + " vs " +
        std::to_string(b.modulus()));
}

}  // namespace upit
