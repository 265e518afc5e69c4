#ifndef TITS_ARITH_HPP
#define TITS_ARITH_HPP

// Checked 64-bit integer helpers and elementary number theory used by the
// Brauer-group backends: modular powers, primality, factorization, Legendre
// symbols and the CRT idempotents behind p-primary decompositions.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "tits/errors.hpp"

namespace tits {

using Int = std::int64_t;

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw overflow_error("integer overflow in multiplication");
  }
  return r;
}

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw overflow_error("integer overflow in addition");
  }
  return r;
}

inline Int checked_neg(Int a) {
  if (a == INT64_MIN) throw overflow_error("integer overflow in negation");
  return -a;
}

inline Int lcm_checked(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  Int g = std::gcd(a, b);
  return checked_mul(a / g, b);
}

// Least non-negative residue.
inline Int mod(Int a, Int n) {
  Int r = a % n;
  return r < 0 ? r + n : r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t n) {
  std::uint64_t result = 1 % n;
  base %= n;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, n);
    base = mulmod(base, base, n);
    exp >>= 1U;
  }
  return result;
}

// Inverse of a modulo n; requires gcd(a, n) = 1.
inline Int inverse_mod(Int a, Int n) {
  Int t = 0, new_t = 1;
  Int r = n, new_r = mod(a, n);
  while (new_r != 0) {
    Int q = r / new_r;
    Int tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw domain_error("inverse_mod: arguments are not coprime");
  return mod(t, n);
}

// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  auto un = static_cast<std::uint64_t>(n);
  std::uint64_t d = un - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, un);
    if (x == 1 || x == un - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, un);
      if (x == un - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

inline std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    std::uint64_t r = 1;
    const std::uint64_t m = 64;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(std::uint64_t n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_prime(static_cast<Int>(n))) {
    ++out[static_cast<Int>(n)];
    return;
  }
  std::uint64_t d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

// Prime factorization of |n| (n != 0) as prime -> exponent.
inline std::map<Int, int> factorize(Int n) {
  if (n == 0) throw domain_error("factorize: zero has no factorization");
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  std::map<Int, int> out;
  for (Int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    while (m % static_cast<std::uint64_t>(p) == 0) {
      ++out[p];
      m /= static_cast<std::uint64_t>(p);
    }
  }
  detail::factor_into(m, out);
  return out;
}

inline std::vector<Int> prime_divisors(Int n) {
  std::vector<Int> ps;
  for (auto [p, e] : factorize(n)) ps.push_back(p);
  return ps;
}

// Returns the prime p when q = p^k with k >= 1, otherwise 0.
inline Int prime_power_base(Int q) {
  if (q < 2) return 0;
  auto f = factorize(q);
  return f.size() == 1 ? f.begin()->first : 0;
}

// Legendre symbol (a|p) for an odd prime p, in {-1, 0, 1}.
inline int legendre(Int a, Int p) {
  Int r = mod(a, p);
  if (r == 0) return 0;
  std::uint64_t e = powmod(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>((p - 1) / 2),
                           static_cast<std::uint64_t>(p));
  return e == 1 ? 1 : -1;
}

// Largest power of p dividing n.
inline Int p_power_part(Int n, Int p) {
  Int pe = 1;
  while (n % p == 0) {
    n /= p;
    pe *= p;
  }
  return pe;
}

// Projection of the residue x (mod n) onto its p-primary component in Z/n,
// i.e. x * u where u = 1 mod p^e and u = 0 mod n / p^e.
inline Int p_primary_residue(Int x, Int n, Int p) {
  Int pe = p_power_part(n, p);
  Int m = n / pe;
  if (pe == 1) return 0;
  if (m == 1) return mod(x, n);
  Int u = static_cast<Int>(mulmod(static_cast<std::uint64_t>(m),
                                  static_cast<std::uint64_t>(inverse_mod(m, pe)),
                                  static_cast<std::uint64_t>(n)));
  return static_cast<Int>(mulmod(static_cast<std::uint64_t>(mod(x, n)), static_cast<std::uint64_t>(u),
                                 static_cast<std::uint64_t>(n)));
}

}  // namespace tits

#endif  // TITS_ARITH_HPP
